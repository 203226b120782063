# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled evaluation kernel.

Line-by-line twin of ``_pykernel`` with typed frames and C control flow;
see that module for the commentary on the machine.  Keep the two in sync:
the test suite runs the accounting checks against both kernels.
"""

from ccsinv.engine.errors import InstantiationFault, UnknownSymbolError

cdef int _PULL = 0
cdef int _EMIT = 1
cdef int _DONE = 2


cdef class _Rule:
    cdef object fn
    cdef Py_ssize_t nv
    cdef tuple params
    cdef tuple conds
    cdef tuple results
    cdef tuple var_names


cdef class _Solve:
    cdef object fn
    cdef tuple args
    cdef object consumer
    cdef tuple rules
    cdef Py_ssize_t ri
    cdef object child
    cdef bint entered

    def __cinit__(self, fn, tuple args, consumer):
        self.fn = fn
        self.args = args
        self.consumer = consumer
        self.rules = None
        self.ri = 0
        self.child = None
        self.entered = False


cdef class _Conds:
    cdef _Rule rule
    cdef list env
    cdef Py_ssize_t idx
    cdef object consumer
    cdef object sub
    cdef object deeper
    cdef list trail
    cdef bint emitted

    def __cinit__(self, _Rule rule, list env, Py_ssize_t idx, consumer):
        self.rule = rule
        self.env = env
        self.idx = idx
        self.consumer = consumer
        self.sub = None
        self.deeper = None
        self.trail = None
        self.emitted = False


cdef bint _match(object p, object s, list env) except -1:
    cdef tuple pt, st, pa, sa
    cdef Py_ssize_t k
    if type(p) is int:
        b = env[<Py_ssize_t> p]
        if b is None:
            env[<Py_ssize_t> p] = s
            return True
        return b == s
    pt = <tuple> p
    st = <tuple> s
    if pt[0] != st[0]:
        return False
    pa = <tuple> pt[1]
    sa = <tuple> st[1]
    for k in range(len(pa)):
        if not _match(pa[k], sa[k], env):
            return False
    return True


cdef bint _match_seq(tuple pats, tuple subjects, list env) except -1:
    cdef Py_ssize_t k
    for k in range(len(pats)):
        if not _match(pats[k], subjects[k], env):
            return False
    return True


cdef bint _match_trail(object p, object s, list env, list trail) except -1:
    cdef tuple pt, st, pa, sa
    cdef Py_ssize_t k
    if type(p) is int:
        b = env[<Py_ssize_t> p]
        if b is None:
            env[<Py_ssize_t> p] = s
            trail.append(p)
            return True
        return b == s
    pt = <tuple> p
    st = <tuple> s
    if pt[0] != st[0]:
        return False
    pa = <tuple> pt[1]
    sa = <tuple> st[1]
    for k in range(len(pa)):
        if not _match_trail(pa[k], sa[k], env, trail):
            return False
    return True


cdef bint _match_seq_trail(tuple pats, tuple subjects, list env, list trail) except -1:
    cdef Py_ssize_t k
    for k in range(len(pats)):
        if not _match_trail(pats[k], subjects[k], env, trail):
            return False
    return True


cdef object _inst(object p, list env, _Rule rule, str what):
    cdef tuple pt, args
    if type(p) is int:
        v = env[<Py_ssize_t> p]
        if v is None:
            raise InstantiationFault(
                "unbound variable %s in %s of a %s rule"
                % (rule.var_names[<Py_ssize_t> p], what, rule.fn))
        return v
    pt = <tuple> p
    args = <tuple> pt[1]
    if not args:
        return p
    return (pt[0], tuple([_inst(a, env, rule, what) for a in args]))


cdef tuple _inst_seq(tuple pats, list env, _Rule rule, str what):
    return tuple([_inst(p, env, rule, what) for p in pats])


def run(dict program, fn, tuple args, bint mode_first, long long budget):
    """Evaluate ``fn(args)``; returns (results, calls, steps, exhausted)."""
    cdef dict compiled = {}
    cdef _Rule cr
    for name, rules in program.items():
        rs = []
        for r in rules:
            cr = _Rule.__new__(_Rule)
            cr.fn = r.fn
            cr.nv = r.nv
            cr.params = r.params
            cr.conds = r.conds
            cr.results = r.results
            cr.var_names = r.var_names
            rs.append(cr)
        compiled[name] = tuple(rs)

    cdef list results = []
    cdef long long calls = 0
    cdef long long steps = 0
    cdef bint exhausted = False
    cdef _Solve root = _Solve(fn, args, None)
    cdef object cur = root
    cdef int sig = _PULL
    cdef object val = None
    cdef _Solve f
    cdef _Conds c
    cdef _Rule rule
    cdef _Conds nxt
    cdef tuple rules_t, conds, cond
    cdef list env, trail
    cdef Py_ssize_t ri, slot_i

    while True:
        if cur is None:
            if sig == _EMIT:
                results.append(val)
                if mode_first:
                    break
                cur = root
                sig = _PULL
                val = None
                continue
            break
        if type(cur) is _Solve:
            f = <_Solve> cur
            if not f.entered:
                f.entered = True
                if calls == budget:
                    exhausted = True
                    break
                calls += 1
                rules_o = compiled.get(f.fn)
                if rules_o is None:
                    raise UnknownSymbolError(f.fn)
                f.rules = <tuple> rules_o
            if sig == _EMIT:
                cur = f.consumer
                continue
            if sig == _PULL and f.child is not None:
                cur = f.child
                continue
            f.child = None
            rules_t = f.rules
            ri = f.ri
            nxt = None
            while ri < len(rules_t):
                rule = <_Rule> rules_t[ri]
                ri += 1
                env = [None] * rule.nv
                if _match_seq(rule.params, f.args, env):
                    nxt = _Conds(rule, env, 0, f)
                    break
            f.ri = ri
            if nxt is None:
                cur = f.consumer
                sig = _DONE
                val = None
            else:
                f.child = nxt
                cur = nxt
                sig = _PULL
                val = None
            continue
        c = <_Conds> cur
        rule = c.rule
        conds = rule.conds
        if c.idx == len(conds):
            if sig == _PULL and not c.emitted:
                c.emitted = True
                steps += 1
                val = _inst_seq(rule.results, c.env, rule, "the results")
                cur = c.consumer
                sig = _EMIT
            else:
                cur = c.consumer
                sig = _DONE
                val = None
            continue
        if c.sub is None:
            cond = <tuple> conds[c.idx]
            gargs = _inst_seq(<tuple> cond[1], c.env, rule,
                              "a condition argument of %s" % cond[0])
            c.sub = _Solve(cond[0], gargs, c)
            cur = c.sub
            sig = _PULL
            val = None
            continue
        if c.deeper is not None:
            if sig == _PULL:
                cur = c.deeper
                continue
            if sig == _EMIT:
                cur = c.consumer
                continue
            c.deeper = None
            env = c.env
            trail = c.trail
            for slot_i in range(len(trail)):
                env[<Py_ssize_t> trail[slot_i]] = None
            c.trail = None
            cur = c.sub
            sig = _PULL
            val = None
            continue
        if sig == _EMIT:
            trail = []
            cond = <tuple> conds[c.idx]
            if _match_seq_trail(<tuple> cond[2], <tuple> val, c.env, trail):
                c.trail = trail
                c.deeper = _Conds(rule, c.env, c.idx + 1, c)
                cur = c.deeper
                sig = _PULL
                val = None
            else:
                env = c.env
                for slot_i in range(len(trail)):
                    env[<Py_ssize_t> trail[slot_i]] = None
                cur = c.sub
                sig = _PULL
                val = None
            continue
        if sig == _DONE:
            c.sub = None
            cur = c.consumer
            sig = _DONE
            val = None
            continue
        raise AssertionError("unexpected PULL at an active condition")

    return results, calls, steps, exhausted
