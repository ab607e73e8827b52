import init, { word_report, rauzy_report, algebra_report } from "./pkg/cogrowth_web.js";

const SVG = "http://www.w3.org/2000/svg";
const $ = (id) => document.getElementById(id);

function el(tag, attrs, text) {
  const e = document.createElementNS(SVG, tag);
  for (const [k, v] of Object.entries(attrs)) e.setAttribute(k, v);
  if (text !== undefined) e.textContent = text;
  return e;
}

function call(f, ...args) {
  const r = JSON.parse(f(...args));
  if (r.error) throw new Error(r.error);
  return r;
}

function show(target, fn) {
  try {
    fn();
  } catch (e) {
    $(target).innerHTML = `<p class="error">${e.message}</p>`;
  }
}

function stepChart(svg, values, reference) {
  svg.replaceChildren();
  const w = +svg.getAttribute("width"), h = +svg.getAttribute("height"), pad = 30;
  const max = Math.max(1, ...values, ...reference);
  const x = (i) => pad + (i / Math.max(1, values.length - 1)) * (w - 2 * pad);
  const y = (v) => h - pad - (v / max) * (h - 2 * pad);
  const path = (vs) => vs.map((v, i) => `${i ? "L" : "M"}${x(i)},${y(v)}`).join(" ");
  svg.append(el("path", { d: path(reference), stroke: "#aaa", fill: "none", "stroke-dasharray": "4 3" }));
  svg.append(el("path", { d: path(values), stroke: "#1565c0", fill: "none", "stroke-width": 2 }));
  svg.append(el("text", { x: pad, y: 15 }, `O(n), n = 1..${values.length}; dashed: log3 n`));
}

function runWord() {
  show("w-out", () => {
    const r = call(word_report, $("w-source").value, +$("w-len").value);
    const shown = r.obstructions.slice(0, 40).join("\n");
    $("w-out").innerHTML = `<p>${r.obstructions.length} obstructions over {${[...r.alphabet].join(", ")}}</p><pre></pre>`;
    $("w-out").querySelector("pre").textContent = shown + (r.obstructions.length > 40 ? "\n..." : "");
    stepChart($("w-chart"), r.cogrowth, r.cogrowth.map((_, i) => Math.log(i + 1) / Math.log(3)));
  });
}

function runRauzy() {
  show("r-out", () => {
    const r = call(rauzy_report, $("r-source").value, +$("r-n").value);
    $("r-out").innerHTML = `<p>${r.vertices.length} vertices, ${r.edges.length} edges, er = ${r.er}</p>`;
    const svg = $("r-graph");
    svg.replaceChildren();
    const defs = el("defs", {});
    const marker = el("marker", { id: "arrow", viewBox: "0 0 10 10", refX: 18, refY: 5, markerWidth: 6, markerHeight: 6, orient: "auto" });
    marker.append(el("path", { d: "M0,0 L10,5 L0,10 z", fill: "#555" }));
    defs.append(marker);
    svg.append(defs);
    const cx = 450, cy = 260, rad = 200, k = r.vertices.length;
    const pos = r.vertices.map((_, i) => [cx + rad * Math.cos((2 * Math.PI * i) / k), cy + rad * Math.sin((2 * Math.PI * i) / k)]);
    for (const e of r.edges) {
      const [x1, y1] = pos[e.from], [x2, y2] = pos[e.to];
      if (e.from === e.to) {
        svg.append(el("circle", { cx: x1 + 14, cy: y1 - 14, r: 14, fill: "none", stroke: "#555" }));
      } else {
        svg.append(el("line", { x1, y1, x2, y2, stroke: "#555", "marker-end": "url(#arrow)" }));
      }
      const title = el("title", {}, e.label);
      svg.lastChild.append(title);
    }
    r.vertices.forEach((v, i) => {
      const branching = r.out_degrees[i] >= 2;
      svg.append(el("circle", { cx: pos[i][0], cy: pos[i][1], r: 8, fill: branching ? "#e53935" : "#1565c0" }));
      if (k <= 40) svg.append(el("text", { x: pos[i][0] + 10, y: pos[i][1] - 10, "font-size": 11 }, v));
    });
  });
}

function runAlgebra() {
  show("a-out", () => {
    const r = call(algebra_report, $("a-rel").value, +$("a-len").value);
    const rows = r.growth.map((v, n) => `${n}\t${v}\t${n ? r.cogrowth[n - 1] : ""}`).join("\n");
    $("a-out").innerHTML = "<p></p><pre></pre><pre></pre>";
    const [p, basis, table] = $("a-out").children;
    p.textContent = `completion ${r.completion}; ${r.obstructions.length} obstructions: ${r.obstructions.join(", ")}`;
    basis.textContent = r.basis.join("\n");
    table.textContent = "n\tV(n)\tO(n)\n" + rows;
  });
}

await init();
$("w-run").onclick = runWord;
$("r-run").onclick = runRauzy;
$("a-run").onclick = runAlgebra;
runWord();
runRauzy();
runAlgebra();
