/**
 * Typed client for the inversion service JSON API.
 *
 * Every pane in the playground displays server text verbatim, so the
 * client never reformats payloads: callers get the exact strings the
 * service produced.
 */

export interface ApiPosition {
  line: number | null;
  column: number | null;
}

/** A 4xx/5xx response body: `{ok:false, error, line, column}`. */
export class RequestError extends Error {
  readonly status: number;
  readonly line: number | null;
  readonly column: number | null;

  constructor(status: number, message: string, pos: ApiPosition) {
    super(message);
    this.status = status;
    this.line = pos.line;
    this.column = pos.column;
  }
}

/** The service could not be reached at all. */
export class ServiceUnreachable extends Error {
  readonly reason: unknown;

  constructor(reason: unknown) {
    super("the inversion service is unreachable");
    this.reason = reason;
  }
}

export interface ExampleEntry {
  name: string;
  description: string;
}

export interface SymbolInfo {
  name: string;
  arity_in: number;
  arity_out: number;
}

export interface DiagnosticsTable {
  rows: string[];
  columns: Record<string, Record<string, { value: string }>>;
  text: string;
}

export interface InvertResponse {
  ok: true;
  inverted_ccs_text: string;
  warnings: string[];
  diagnostics_table: DiagnosticsTable;
  error: null;
}

export interface DiagnoseResponse {
  ok: true;
  diagnostics_table: DiagnosticsTable;
  symbols: SymbolInfo[];
}

export interface EvalResponse {
  ok: true;
  results: string[];
  rewrite_steps: number;
  function_calls: number;
  exhausted: boolean;
}

export interface LatexResponse {
  ok: true;
  latex: string;
}

export type InverterKind = "trivial" | "full" | "partial" | "semi";

export class ApiClient {
  constructor(readonly base: string = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let resp: Response;
    try {
      resp = await fetch(this.base + path, init);
    } catch (err) {
      throw new ServiceUnreachable(err);
    }
    const body = await resp.json().catch(() => null);
    if (!resp.ok) {
      const message =
        body && typeof body.error === "string" ? body.error
        : body && typeof body.detail === "string" ? body.detail
        : `request failed with status ${resp.status}`;
      throw new RequestError(resp.status, message, {
        line: body?.line ?? null,
        column: body?.column ?? null,
      });
    }
    return body as T;
  }

  private post<T>(path: string, payload: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  async examples(): Promise<ExampleEntry[]> {
    const body = await this.request<{ examples: ExampleEntry[] }>("/api/examples");
    return body.examples;
  }

  async exampleText(name: string): Promise<string> {
    let resp: Response;
    try {
      resp = await fetch(`${this.base}/api/examples/${encodeURIComponent(name)}`);
    } catch (err) {
      throw new ServiceUnreachable(err);
    }
    if (!resp.ok) {
      throw new RequestError(resp.status, `unknown example ${name}`, { line: null, column: null });
    }
    return resp.text();
  }

  invert(ccsText: string, fn: string, inputs: number[], outputs: number[],
         inverter: InverterKind): Promise<InvertResponse> {
    return this.post("/api/invert", {
      ccs_text: ccsText, function: fn, I: inputs, O: outputs, inverter,
    });
  }

  diagnose(ccsText: string): Promise<DiagnoseResponse> {
    return this.post("/api/diagnose", { ccs_text: ccsText });
  }

  evaluate(ccsText: string, queryText: string, mode: "all" | "first" = "all",
           budget?: number): Promise<EvalResponse> {
    return this.post("/api/eval", {
      ccs_text: ccsText, query_text: queryText, mode,
      ...(budget === undefined ? {} : { budget }),
    });
  }

  latex(ccsText: string): Promise<LatexResponse> {
    return this.post("/api/latex", { ccs_text: ccsText });
  }
}
