// pkg/ is produced by wasm-bindgen --target web (see the README)
import init, { constructGroup, figureTable, analyzePresentation } from "./pkg/defgroups_web.js";

const $ = (id) => document.getElementById(id);

function show(el, f) {
  el.classList.remove("err");
  try {
    f();
  } catch (e) {
    el.classList.add("err");
    el.textContent = String(e.message ?? e);
  }
}

function certLine(c) {
  if (!c) return "";
  const lines = [c.verdict];
  if (c.h1) lines.push(`H1 = ${c.h1}`);
  if (c.h2) lines.push(`H2 = ${c.h2}`);
  return lines.join("\n");
}

function onConstruct() {
  const out = $("c-out");
  show(out, () => {
    const r = JSON.parse(constructGroup(+$("c-p").value, +$("c-n").value));
    out.textContent = [
      `${r.group}   (r, s, t) = (${r.r}, ${r.s}, ${r.t})`,
      `${r.generators} generators, ${r.relators} relators`,
      r.presentation,
      "",
      certLine(r.certificate),
      "",
      "GAP:",
      r.gap,
    ].join("\n");
  });
}

function onTable() {
  const out = $("t-out");
  show(out, () => {
    const rows = JSON.parse(figureTable(+$("t-p").value, +$("t-n").value));
    const table = document.createElement("table");
    table.innerHTML = "<tr><th>n</th><th>r</th><th>s</th><th>t</th><th>group</th></tr>";
    for (const row of rows) {
      const tr = table.insertRow();
      for (const k of ["n", "r", "s", "t", "group"]) tr.insertCell().textContent = row[k];
    }
    out.replaceChildren(table);
  });
}

function onAnalyze() {
  const out = $("a-out");
  show(out, () => {
    const r = JSON.parse(analyzePresentation($("a-in").value));
    const lines = [r.presentation, `deficiency ${r.deficiency}`, `H1 = ${r.h1}`];
    if (r.order !== null) lines.push(`order ${r.order}`);
    if (r.h2) lines.push(`H2 = ${r.h2}`);
    if (r.note) lines.push(r.note);
    if (r.certificate) lines.push("", certLine(r.certificate));
    out.textContent = lines.join("\n");
  });
}

await init();
$("c-go").addEventListener("click", onConstruct);
$("t-go").addEventListener("click", onTable);
$("a-go").addEventListener("click", onAnalyze);
onConstruct();
onTable();
