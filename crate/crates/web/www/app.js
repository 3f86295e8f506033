import init, { run_matching, naive_error_by_k, b_bound_curve } from "./pkg/sidematch_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function plot(canvas, points, { xLabel, yLabel, logY = false }) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = { l: 60, r: 15, t: 15, b: 40 };
  ctx.clearRect(0, 0, w, h);
  if (points.length === 0) return;
  const ty = (y) => (logY ? Math.log10(Math.max(y, 1e-9)) : y);
  const xs = points.map((p) => p.x);
  const ys = points.map((p) => ty(p.y));
  let [x0, x1] = [Math.min(...xs), Math.max(...xs)];
  let [y0, y1] = [Math.min(...ys), Math.max(...ys)];
  if (x0 === x1) { x0 -= 1; x1 += 1; }
  if (y0 === y1) { y0 -= 1; y1 += 1; }
  const px = (x) => pad.l + ((x - x0) / (x1 - x0)) * (w - pad.l - pad.r);
  const py = (y) => h - pad.b - ((ty(y) - y0) / (y1 - y0)) * (h - pad.t - pad.b);

  ctx.strokeStyle = "#888";
  ctx.beginPath();
  ctx.moveTo(pad.l, pad.t);
  ctx.lineTo(pad.l, h - pad.b);
  ctx.lineTo(w - pad.r, h - pad.b);
  ctx.stroke();

  ctx.fillStyle = "#444";
  ctx.font = "12px sans-serif";
  ctx.textAlign = "center";
  ctx.fillText(xLabel, (pad.l + w - pad.r) / 2, h - 8);
  for (const x of [x0, (x0 + x1) / 2, x1]) ctx.fillText(+x.toPrecision(3), px(x), h - pad.b + 15);
  ctx.textAlign = "right";
  for (const y of [y0, (y0 + y1) / 2, y1]) {
    const v = logY ? 10 ** y : y;
    ctx.fillText(+v.toPrecision(3), pad.l - 6, h - pad.b - ((y - y0) / (y1 - y0)) * (h - pad.t - pad.b) + 4);
  }
  ctx.save();
  ctx.translate(14, (pad.t + h - pad.b) / 2);
  ctx.rotate(-Math.PI / 2);
  ctx.textAlign = "center";
  ctx.fillText(yLabel, 0, 0);
  ctx.restore();

  ctx.strokeStyle = "#1f5fbf";
  ctx.lineWidth = 2;
  ctx.beginPath();
  points.forEach((p, i) => (i ? ctx.lineTo(px(p.x), py(p.y)) : ctx.moveTo(px(p.x), py(p.y))));
  ctx.stroke();
  ctx.fillStyle = "#1f5fbf";
  if (points.length <= 40) for (const p of points) ctx.fillRect(px(p.x) - 3, py(p.y) - 3, 6, 6);
}

function fmt(v) {
  return v === null || v === undefined ? "n/a" : typeof v === "number" && !Number.isInteger(v) ? v.toFixed(4) : v;
}

function guarded(outId, fn) {
  return () => {
    const out = $(outId);
    try {
      fn(out);
    } catch (e) {
      out.innerHTML = `<p class="error">${e.message ?? e}</p>`;
    }
  };
}

function runMatcher(out) {
  const t0 = performance.now();
  const r = JSON.parse(run_matching($("m-alg").value, num("m-n"), num("m-k"), num("m-b"), num("m-s"), num("m-phi"), num("m-seed")));
  const ms = performance.now() - t0;
  const rows = [
    ["matched", `${r.matched} of ${r.n} (f = ${fmt(r.f)})`],
    ["correct / wrong", `${r.correct} / ${r.wrong}`],
    ["error rate e", fmt(r.e)],
    ["F1 over the giant component", fmt(r.f1)],
    ["giant component of the intersection graph", r.n_int],
    ["stalled", r.stalled],
    ["time", `${ms.toFixed(0)} ms`],
  ];
  out.innerHTML = `<table>${rows.map(([k, v]) => `<tr><td>${k}</td><td>${v}</td></tr>`).join("")}</table>`;
  plot($("m-plot"), r.growth.map((y, x) => ({ x, y })), { xLabel: "spreading step", yLabel: "matched pairs" });
}

function runCurve(out) {
  const ks = $("k-ks").value.split(",").map((x) => parseInt(x, 10)).filter((x) => x > 0);
  const pts = JSON.parse(naive_error_by_k(num("k-n"), num("k-b"), num("k-s"), Uint32Array.from(ks), 1));
  out.textContent = pts.map((p) => `K=${p.x}: ${p.y.toFixed(4)}`).join("   ");
  plot($("k-plot"), pts, { xLabel: "communities K", yLabel: "naive error rate" });
}

function runBound(out) {
  const s = num("b-s");
  $("b-s-val").textContent = s.toFixed(2);
  const pts = JSON.parse(b_bound_curve(s, 100));
  out.textContent = pts.length ? "" : "no finite bound for this s";
  plot($("b-plot"), pts, { xLabel: "alpha = log K / log n", yLabel: "minimum b", logY: true });
}

await init();
$("m-run").addEventListener("click", guarded("m-out", runMatcher));
$("k-run").addEventListener("click", guarded("k-out", runCurve));
$("b-s").addEventListener("input", guarded("b-out", runBound));
guarded("b-out", runBound)();
