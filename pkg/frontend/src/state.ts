/**
 * Playground state and actions, independent of the DOM.
 *
 * The UI never computes inversions, diagnostics, or LaTeX itself: actions
 * call the service and store the response text verbatim; the DOM layer
 * renders stored strings without modification.
 */

import {
  ApiClient,
  ExampleEntry,
  InverterKind,
  RequestError,
  ServiceUnreachable,
  SymbolInfo,
} from "./api.js";

export interface UiError {
  message: string;
  line: number | null;
  column: number | null;
  unreachable: boolean;
}

export interface UiState {
  source: string;
  examples: ExampleEntry[];
  symbols: SymbolInfo[];
  fn: string | null;
  inputs: number[];
  outputs: number[];
  inverter: InverterKind;
  inversionText: string;
  warnings: string[];
  diagnosticsText: string;
  latexText: string;
  error: UiError | null;
  busy: boolean;
}

export const INVERTERS: InverterKind[] = ["trivial", "full", "partial", "semi"];

export function initialState(): UiState {
  return {
    source: "",
    examples: [],
    symbols: [],
    fn: null,
    inputs: [],
    outputs: [],
    inverter: "partial",
    inversionText: "",
    warnings: [],
    diagnosticsText: "",
    latexText: "",
    error: null,
    busy: false,
  };
}

function range1(n: number): number[] {
  return Array.from({ length: n }, (_, i) => i + 1);
}

function sameMembers(a: number[], b: number[]): boolean {
  if (a.length !== b.length) return false;
  const xs = [...a].sort((p, q) => p - q);
  const ys = [...b].sort((p, q) => p - q);
  return xs.every((x, i) => x === ys[i]);
}

/** Whether the inverter kind accepts the direction (I, O) of a symbol. */
export function admissible(kind: InverterKind, sym: SymbolInfo,
                           inputs: number[], outputs: number[]): boolean {
  switch (kind) {
    case "trivial":
      return sameMembers(inputs, range1(sym.arity_in)) && outputs.length === 0;
    case "full":
      return inputs.length === 0 && sameMembers(outputs, range1(sym.arity_out));
    case "partial":
      return sameMembers(outputs, range1(sym.arity_out));
    case "semi":
      return true;
  }
}

export class Store {
  state: UiState = initialState();
  private listeners: Array<(s: UiState) => void> = [];
  private lastAction: (() => Promise<void>) | null = null;

  constructor(readonly api: ApiClient) {}

  subscribe(fn: (s: UiState) => void): void {
    this.listeners.push(fn);
  }

  private emit(): void {
    for (const fn of this.listeners) fn(this.state);
  }

  patch(changes: Partial<UiState>): void {
    this.state = { ...this.state, ...changes };
    this.emit();
  }

  setSource(text: string): void {
    // edited text invalidates the symbol list the task dialog was built on
    this.patch({ source: text, symbols: [], fn: null, inputs: [], outputs: [] });
  }

  selectFunction(name: string | null): void {
    // index selections are bounded by the arities of the chosen function
    this.patch({ fn: name, inputs: [], outputs: [] });
  }

  toggleIndex(which: "inputs" | "outputs", index: number): void {
    const current = this.state[which];
    const next = current.includes(index)
      ? current.filter((i) => i !== index)
      : [...current, index].sort((a, b) => a - b);
    this.patch({ [which]: next } as Partial<UiState>);
  }

  setInverter(kind: InverterKind): void {
    this.patch({ inverter: kind });
  }

  selectedSymbol(): SymbolInfo | null {
    return this.state.symbols.find((s) => s.name === this.state.fn) ?? null;
  }

  taskAdmissible(): boolean {
    const sym = this.selectedSymbol();
    if (sym === null) return false;
    return admissible(this.state.inverter, sym, this.state.inputs, this.state.outputs);
  }

  /** Re-run the last failed action (the banner's retry button). */
  retry(): Promise<void> {
    return this.lastAction ? this.lastAction() : Promise.resolve();
  }

  private async run(action: () => Promise<void>): Promise<void> {
    if (this.state.busy) return;
    this.lastAction = action;
    this.patch({ busy: true, error: null });
    try {
      await action();
    } catch (err) {
      if (err instanceof RequestError) {
        this.patch({ error: {
          message: err.message, line: err.line, column: err.column, unreachable: false,
        } });
      } else if (err instanceof ServiceUnreachable) {
        this.patch({ error: {
          message: err.message, line: null, column: null, unreachable: true,
        } });
      } else {
        throw err;
      }
    } finally {
      this.patch({ busy: false });
    }
  }

  loadExamples(): Promise<void> {
    return this.run(async () => {
      this.patch({ examples: await this.api.examples() });
    });
  }

  chooseExample(name: string): Promise<void> {
    return this.run(async () => {
      const text = await this.api.exampleText(name);
      this.patch({ source: text, symbols: [], fn: null, inputs: [], outputs: [] });
    });
  }

  /** Parse the current source server-side to learn the defined symbols. */
  refreshSymbols(): Promise<void> {
    return this.run(async () => {
      const resp = await this.api.diagnose(this.state.source);
      const symbols = resp.symbols;
      const fn = this.state.fn !== null && symbols.some((s) => s.name === this.state.fn)
        ? this.state.fn
        : symbols.length > 0 ? symbols[0]!.name : null;
      this.patch({ symbols, fn, inputs: [], outputs: [] });
    });
  }

  invert(): Promise<void> {
    return this.run(async () => {
      const fn = this.state.fn;
      if (fn === null) throw new RequestError(0, "choose a function first (Options)", {
        line: null, column: null,
      });
      const resp = await this.api.invert(
        this.state.source, fn, this.state.inputs, this.state.outputs, this.state.inverter);
      this.patch({
        inversionText: resp.inverted_ccs_text,
        warnings: resp.warnings,
        diagnosticsText: resp.diagnostics_table.text,
      });
    });
  }

  diagnose(): Promise<void> {
    return this.run(async () => {
      const resp = await this.api.diagnose(this.state.source);
      this.patch({ diagnosticsText: resp.diagnostics_table.text });
    });
  }

  latex(): Promise<void> {
    return this.run(async () => {
      const resp = await this.api.latex(this.state.source);
      this.patch({ latexText: resp.latex });
    });
  }

  /** Feed the last inversion back into the editor to chain inversions. */
  copyInversionToInput(): void {
    if (this.state.inversionText !== "") {
      this.setSource(this.state.inversionText);
    }
  }
}
