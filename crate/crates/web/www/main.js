// Build the bindings first: see the README for the wasm-bindgen command.
import init, { stirling_row_json, zeta_sweep_json, gf_curve_json } from "./pkg/stirzeta_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => parseInt($(id).value, 10);

function parse(json, out) {
  const v = JSON.parse(json);
  if (v.error) {
    out.textContent = "error: " + v.error;
    return null;
  }
  return v;
}

// Plot one or more series of [x, y] points with linear axes.
function plot(canvas, series) {
  const ctx = canvas.getContext("2d");
  const w = canvas.width, h = canvas.height, pad = 40;
  ctx.clearRect(0, 0, w, h);
  const pts = series.flatMap((s) => s.points).filter(([, y]) => Number.isFinite(y));
  if (pts.length === 0) return;
  let [x0, x1] = [Math.min(...pts.map((p) => p[0])), Math.max(...pts.map((p) => p[0]))];
  let [y0, y1] = [Math.min(...pts.map((p) => p[1])), Math.max(...pts.map((p) => p[1]))];
  if (x0 === x1) x1 = x0 + 1;
  if (y0 === y1) { y0 -= 1; y1 += 1; }
  const sx = (x) => pad + ((x - x0) / (x1 - x0)) * (w - 2 * pad);
  const sy = (y) => h - pad - ((y - y0) / (y1 - y0)) * (h - 2 * pad);

  ctx.strokeStyle = "#999";
  ctx.strokeRect(pad, pad, w - 2 * pad, h - 2 * pad);
  ctx.fillStyle = "#333";
  ctx.font = "11px sans-serif";
  ctx.fillText(y1.toPrecision(4), 2, pad);
  ctx.fillText(y0.toPrecision(4), 2, h - pad);
  ctx.fillText(String(x0), pad, h - pad + 14);
  ctx.fillText(String(x1), w - pad - 10, h - pad + 14);

  for (const s of series) {
    ctx.strokeStyle = s.color;
    ctx.fillStyle = s.color;
    ctx.beginPath();
    s.points.forEach(([x, y], i) => (i ? ctx.lineTo(sx(x), sy(y)) : ctx.moveTo(sx(x), sy(y))));
    ctx.stroke();
    for (const [x, y] of s.points) ctx.fillRect(sx(x) - 2, sy(y) - 2, 4, 4);
    if (s.label) ctx.fillText(s.label, sx(s.points[s.points.length - 1][0]) - 60, sy(s.points[s.points.length - 1][1]) - 6);
  }
}

function runRow() {
  const out = $("row-out");
  const row = parse(stirling_row_json(num("row-p"), num("row-n")), out);
  if (!row) return;
  out.textContent = row.map((e) => `S_${e.n} = ${e.numerator}/${e.denominator}`).join("\n");
  plot($("row-plot"), [
    { color: "#1565c0", label: "n! |S_n^p|", points: row.map((e) => [e.n, e.scaled]) },
  ]);
}

function runSweep() {
  const out = $("sw-out");
  const pts = parse(zeta_sweep_json(num("sw-p"), num("sw-min"), num("sw-max")), out);
  if (!pts) return;
  out.textContent = pts.map((r) => `N = ${r.N}: |ζ - ζ_N| = ${r.abs_err.toExponential(4)}`).join("\n");
  plot($("sw-plot"), [
    { color: "#c62828", label: "ln err", points: pts.map((r) => [r.N, r.ln_abs_err]) },
    { color: "#888", label: "ln N e^-N", points: pts.map((r) => [r.N, Math.log(r.envelope)]) },
  ]);
}

function runGf() {
  const out = $("gf-out");
  const [a, b = "1"] = $("gf-t").value.split("/");
  const c = parse(gf_curve_json(num("gf-p"), parseInt(a, 10), parseInt(b, 10), num("gf-n")), out);
  if (!c) return;
  const last = c.partial_sums[c.partial_sums.length - 1];
  out.textContent = `closed form ${c.closed} ± ${c.closed_radius.toExponential(1)}\n` +
    `partial sum  ${last} (difference ${Math.abs(last - c.closed).toExponential(2)})`;
  const n = c.partial_sums.length;
  plot($("gf-plot"), [
    { color: "#2e7d32", label: "partial sums", points: c.partial_sums.map((s, i) => [i, s]) },
    { color: "#888", label: "closed form", points: [[0, c.closed], [n - 1, c.closed]] },
  ]);
}

await init();
$("row-go").onclick = runRow;
$("sw-go").onclick = runSweep;
$("gf-go").onclick = runGf;
runRow();
runGf();
