"""Expected inversion outputs, hand-transcribed, for the golden tests.

Each entry: (example name, function, inputs, outputs, inverter,
expected system text).  Comparison is up to variable renaming.
"""

REM_PARTIAL = """
(VAR i x xs y zs)
(RULES
rem{2}{1,2}(0,x,xs) -> <:(x,xs)>
rem{2}{1,2}(s(i),y,:(x,zs)) -> <:(x,xs)> <= rem{2}{1,2}(i,y,zs) -> <xs>
)
"""

REM_FULL = """
(VAR i x xs y zs)
(RULES
rem{}{1,2}(x,xs) -> <:(x,xs),0>
rem{}{1,2}(y,:(x,zs)) -> <:(x,xs),s(i)> <= rem{}{1,2}(y,zs) -> <xs,i>
)
"""

REM_SEMI = """
(VAR i x xs y zs)
(RULES
rem{1}{1}(:(x,xs),x) -> <0,xs>
rem{1}{1}(:(x,xs),y) -> <s(i),:(x,zs)> <= rem{1}{1}(xs,y) -> <i,zs>
)
"""

ADD_PARTIAL = """
(VAR x y z)
(RULES
add{1}{1}(0,y) -> <y>
add{1}{1}(s(x),s(z)) -> <y> <= add{1}{1}(x,z) -> <y>
)
"""

ACK_PARTIAL_FIRST = """
(VAR v x y z)
(RULES
ack{1}{1}(0,s(y)) -> <y>
ack{1}{1}(s(x),z) -> <0> <= ack{1,2}{1}(x,s(0),z) -> <>
ack{1}{1}(s(x),z) -> <s(y)> <= ack{1}{1}(x,z) -> <v>, ack{1}{1}(s(x),v) -> <y>
ack{1,2}{1}(0,y,s(y)) -> <>
ack{1,2}{1}(s(x),0,z) -> <> <= ack{1,2}{1}(x,s(0),z) -> <>
ack{1,2}{1}(s(x),s(y),z) -> <> <= ack{1}{1}(x,z) -> <v>, ack{1,2}{1}(s(x),y,v) -> <>
)
"""

# the second-argument direction pulls in the first-argument one wholesale
ACK_PARTIAL_SECOND = """
(VAR v x y z)
(RULES
ack{2}{1}(y,s(y)) -> <0>
ack{2}{1}(0,z) -> <s(x)> <= ack{2}{1}(s(0),z) -> <x>
ack{2}{1}(s(y),z) -> <s(x)> <= ack{}{1}(z) -> <x,v>, ack{1,2}{1}(s(x),y,v) -> <>
ack{}{1}(s(y)) -> <0,y>
ack{}{1}(z) -> <s(x),0> <= ack{2}{1}(s(0),z) -> <x>
ack{}{1}(z) -> <s(x),s(y)> <= ack{}{1}(z) -> <x,v>, ack{1}{1}(s(x),v) -> <y>
ack{1,2}{1}(0,y,s(y)) -> <>
ack{1,2}{1}(s(x),0,z) -> <> <= ack{1,2}{1}(x,s(0),z) -> <>
ack{1,2}{1}(s(x),s(y),z) -> <> <= ack{1}{1}(x,z) -> <v>, ack{1,2}{1}(s(x),y,v) -> <>
ack{1}{1}(0,s(y)) -> <y>
ack{1}{1}(s(x),z) -> <0> <= ack{1,2}{1}(x,s(0),z) -> <>
ack{1}{1}(s(x),z) -> <s(y)> <= ack{1}{1}(x,z) -> <v>, ack{1}{1}(s(x),v) -> <y>
)
"""

ACK_FULL = """
(VAR v x y z)
(RULES
ack{}{1}(s(y)) -> <0,y>
ack{}{1}(z) -> <s(x),0> <= ack{}{1}(z) -> <x,s(0)>
ack{}{1}(z) -> <s(x),s(y)> <= ack{}{1}(z) -> <x,v>, ack{}{1}(v) -> <s(x),y>
)
"""

#: (example, function, inputs, outputs, inverter, expected text)
GOLDEN_INVERSIONS = [
    ("rem", "rem", [2], [1, 2], "partial", REM_PARTIAL),
    ("rem", "rem", [], [1, 2], "full", REM_FULL),
    ("rem", "rem", [1], [1], "semi", REM_SEMI),
    ("add", "add", [1], [1], "partial", ADD_PARTIAL),
    ("ack", "ack", [1], [1], "partial", ACK_PARTIAL_FIRST),
    ("ack", "ack", [2], [1], "partial", ACK_PARTIAL_SECOND),
    ("ack", "ack", [], [1], "full", ACK_FULL),
]
