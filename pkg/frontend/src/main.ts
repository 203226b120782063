/**
 * DOM wiring for the playground.
 *
 * Layout: a navigation bar (green action buttons, white settings
 * buttons), a white input window for the system text, and two gray
 * output windows -- inverted systems lower left, diagnostics lower
 * right.  All output panes show service responses verbatim.
 */

import { ApiClient, InverterKind } from "./api.js";
import { INVERTERS, Store, UiState, admissible } from "./state.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K, className?: string, text?: string): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export interface Mounted {
  store: Store;
  root: HTMLElement;
}

export function mount(root: HTMLElement, apiBase = "", api?: ApiClient): Mounted {
  const store = new Store(api ?? new ApiClient(apiBase));
  root.innerHTML = "";
  root.classList.add("workbench");

  // --- navigation bar ---
  const nav = el("div", "nav");
  const examplesBtn = el("button", "settings", "Examples");
  const optionsBtn = el("button", "settings", "Options");
  const invertBtn = el("button", "action", "Invert");
  const diagnoseBtn = el("button", "action", "Diagnose");
  const latexBtn = el("button", "action", "Latex");
  nav.append(examplesBtn, optionsBtn, invertBtn, diagnoseBtn, latexBtn);

  const taskLabel = el("span", "task-label", "");
  nav.append(taskLabel);

  // --- error banner ---
  const banner = el("div", "banner hidden");
  const bannerText = el("span", "banner-text");
  const retryBtn = el("button", "retry", "Retry");
  banner.append(bannerText, retryBtn);

  // --- input window ---
  const inputPane = el("div", "input-pane");
  const source = el("textarea", "source");
  source.spellcheck = false;
  source.placeholder = "Enter a conditional constructor system, or pick one via Examples.";
  inputPane.append(source);

  // --- output windows ---
  const outputs = el("div", "outputs");
  const invPane = el("div", "pane inversion-pane");
  const invHead = el("div", "pane-head");
  invHead.append(el("span", "pane-title", "Inverted systems"));
  const copyBtn = el("button", "copy", "Copy to input");
  invHead.append(copyBtn);
  const invText = el("pre", "pane-body inversion-text");
  const warnText = el("div", "warnings hidden");
  invPane.append(invHead, invText, warnText);

  const diagPane = el("div", "pane diagnostics-pane");
  const diagHead = el("div", "pane-head");
  diagHead.append(el("span", "pane-title", "Diagnostics"));
  const diagText = el("pre", "pane-body diagnostics-text");
  diagPane.append(diagHead, diagText);
  outputs.append(invPane, diagPane);

  // --- examples menu (overlay) ---
  const examplesMenu = el("div", "overlay hidden examples-menu");
  // --- options dialog (overlay) ---
  const optionsMenu = el("div", "overlay hidden options-menu");
  // --- latex modal (overlay) ---
  const latexModal = el("div", "overlay hidden latex-modal");

  root.append(nav, banner, inputPane, outputs, examplesMenu, optionsMenu, latexModal);

  // --- rendering ---

  source.addEventListener("input", () => {
    store.setSource(source.value);
  });

  function renderExamplesMenu(state: UiState): void {
    examplesMenu.innerHTML = "";
    const box = el("div", "overlay-box");
    box.append(el("h3", undefined, "Examples"));
    if (state.examples.length === 0) {
      box.append(el("p", "empty", "No examples available."));
    }
    for (const entry of state.examples) {
      const item = el("button", "example-item", `${entry.name} - ${entry.description}`);
      item.addEventListener("click", async () => {
        examplesMenu.classList.add("hidden");
        await store.chooseExample(entry.name);
      });
      box.append(item);
    }
    const close = el("button", "close", "Close");
    close.addEventListener("click", () => examplesMenu.classList.add("hidden"));
    box.append(close);
    examplesMenu.append(box);
  }

  function renderOptionsMenu(state: UiState): void {
    optionsMenu.innerHTML = "";
    const box = el("div", "overlay-box");
    box.append(el("h3", undefined, "Inversion task"));
    if (state.symbols.length === 0) {
      box.append(el("p", "empty", "No defined function symbols in the input."));
    } else {
      const fnRow = el("div", "opt-row");
      fnRow.append(el("label", undefined, "Function "));
      const select = el("select", "fn-select");
      for (const sym of state.symbols) {
        const opt = el("option", undefined,
          `${sym.name} (${sym.arity_in} in, ${sym.arity_out} out)`);
        opt.value = sym.name;
        opt.selected = sym.name === state.fn;
        select.append(opt);
      }
      select.addEventListener("change", () => {
        store.selectFunction(select.value);
        renderOptionsMenu(store.state);
      });
      fnRow.append(select);
      box.append(fnRow);

      const sym = store.selectedSymbol();
      if (sym !== null) {
        box.append(indexRow("Known inputs (I)", "inputs", sym.arity_in, state.inputs));
        box.append(indexRow("Known outputs (O)", "outputs", sym.arity_out, state.outputs));
      }

      const invRow = el("div", "opt-row inverters");
      invRow.append(el("label", undefined, "Rule inverter "));
      for (const kind of INVERTERS) {
        const lab = el("label", "inverter-choice");
        const radio = el("input");
        radio.type = "radio";
        radio.name = "inverter";
        radio.value = kind;
        radio.checked = kind === state.inverter;
        radio.addEventListener("change", () => {
          store.setInverter(kind as InverterKind);
          renderOptionsMenu(store.state);
        });
        lab.append(radio, document.createTextNode(" " + kind));
        invRow.append(lab);
      }
      box.append(invRow);

      const hint = el("p", "admissible-hint");
      const okNow = store.taskAdmissible();
      hint.textContent = okNow
        ? "Task is admissible for the chosen inverter."
        : admissibilityHint(state.inverter);
      hint.classList.toggle("bad", !okNow);
      box.append(hint);
    }
    const close = el("button", "close", "Done");
    close.addEventListener("click", () => optionsMenu.classList.add("hidden"));
    box.append(close);
    optionsMenu.append(box);
  }

  function indexRow(title: string, which: "inputs" | "outputs",
                    arity: number, selected: number[]): HTMLElement {
    const row = el("div", "opt-row");
    row.append(el("label", undefined, title + " "));
    if (arity === 0) {
      row.append(el("span", "empty", "(no positions)"));
    }
    for (let i = 1; i <= arity; i++) {
      const lab = el("label", "index-choice");
      const box = el("input");
      box.type = "checkbox";
      box.checked = selected.includes(i);
      box.addEventListener("change", () => {
        store.toggleIndex(which, i);
        renderOptionsMenu(store.state);
      });
      lab.append(box, document.createTextNode(String(i)));
      row.append(lab);
    }
    return row;
  }

  function admissibilityHint(kind: InverterKind): string {
    switch (kind) {
      case "trivial": return "trivial needs I = all inputs and O empty";
      case "full": return "full needs I empty and O = all outputs";
      case "partial": return "partial needs O = all outputs";
      case "semi": return "choose a function first";
    }
  }

  function renderLatexModal(state: UiState): void {
    latexModal.innerHTML = "";
    const box = el("div", "overlay-box");
    box.append(el("h3", undefined, "LaTeX"));
    const pre = el("pre", "latex-text", state.latexText);
    box.append(pre);
    const close = el("button", "close", "Close");
    close.addEventListener("click", () => latexModal.classList.add("hidden"));
    box.append(close);
    latexModal.append(box);
  }

  function highlightErrorLine(line: number): void {
    const lines = source.value.split("\n");
    if (line < 1 || line > lines.length) return;
    let start = 0;
    for (let i = 0; i < line - 1; i++) start += lines[i]!.length + 1;
    source.focus();
    source.setSelectionRange(start, start + lines[line - 1]!.length);
  }

  function render(state: UiState): void {
    if (source.value !== state.source) source.value = state.source;
    invText.textContent = state.inversionText;
    diagText.textContent = state.diagnosticsText;
    warnText.classList.toggle("hidden", state.warnings.length === 0);
    warnText.textContent = state.warnings.map((w) => `warning: ${w}`).join("\n");

    const sym = store.selectedSymbol();
    taskLabel.textContent = sym === null ? "" :
      `${sym.name} I={${state.inputs.join(",")}} O={${state.outputs.join(",")}} ${state.inverter}`;

    banner.classList.toggle("hidden", state.error === null);
    if (state.error !== null) {
      const pos = state.error.line !== null
        ? ` (line ${state.error.line}` +
          (state.error.column !== null ? `, column ${state.error.column})` : ")")
        : "";
      bannerText.textContent = state.error.message + pos;
      retryBtn.classList.toggle("hidden", !state.error.unreachable);
      if (state.error.line !== null) highlightErrorLine(state.error.line);
    }

    const buttonsDisabled = state.busy;
    for (const b of [examplesBtn, optionsBtn, diagnoseBtn, latexBtn]) {
      b.disabled = buttonsDisabled;
    }
    invertBtn.disabled = buttonsDisabled || !store.taskAdmissible();
    copyBtn.disabled = state.inversionText === "";
  }

  store.subscribe(render);
  render(store.state);

  // --- button actions ---

  examplesBtn.addEventListener("click", async () => {
    await store.loadExamples();
    if (store.state.error === null) {
      renderExamplesMenu(store.state);
      examplesMenu.classList.remove("hidden");
    }
  });

  optionsBtn.addEventListener("click", async () => {
    await store.refreshSymbols();
    if (store.state.error === null) {
      renderOptionsMenu(store.state);
      optionsMenu.classList.remove("hidden");
    }
  });

  invertBtn.addEventListener("click", () => store.invert());
  diagnoseBtn.addEventListener("click", () => store.diagnose());
  latexBtn.addEventListener("click", async () => {
    await store.latex();
    if (store.state.error === null) {
      renderLatexModal(store.state);
      latexModal.classList.remove("hidden");
    }
  });
  copyBtn.addEventListener("click", () => store.copyInversionToInput());
  retryBtn.addEventListener("click", () => store.retry());

  return { store, root };
}

const appRoot = typeof document !== "undefined" ? document.getElementById("app") : null;
if (appRoot !== null) {
  mount(appRoot);
}
