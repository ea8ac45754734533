import init, { presets, simulate, certify, divergence_grid } from "./pkg/oco_web.js";

const $ = (id) => document.getElementById(id);

function parseCsv(text) {
  const [header, ...lines] = text.trim().split("\n");
  const cols = header.split(",");
  return lines.map((line) => {
    const cells = line.split(",");
    return Object.fromEntries(cols.map((c, i) => [c, cells[i] === "" ? null : Number(cells[i])]));
  });
}

function drawCurve(rows) {
  const canvas = $("curve");
  const ctx = canvas.getContext("2d");
  const w = canvas.width, h = canvas.height, pad = 40;
  ctx.clearRect(0, 0, w, h);
  if (rows.length === 0) return;
  const tMax = rows[rows.length - 1].t;
  const values = rows.flatMap((r) => [r.regret_t, r.bound_t]);
  const lo = Math.min(0, ...values), hi = Math.max(...values);
  const x = (t) => pad + ((w - 2 * pad) * t) / tMax;
  const y = (v) => h - pad - ((h - 2 * pad) * (v - lo)) / (hi - lo || 1);
  ctx.strokeStyle = "#999";
  ctx.beginPath();
  ctx.moveTo(pad, pad); ctx.lineTo(pad, h - pad); ctx.lineTo(w - pad, h - pad);
  ctx.stroke();
  ctx.fillStyle = "#444";
  ctx.font = "11px sans-serif";
  ctx.fillText(hi.toPrecision(4), 2, pad);
  ctx.fillText(lo.toPrecision(4), 2, h - pad);
  ctx.fillText(`t = ${tMax}`, w - pad - 40, h - pad + 16);
  const series = [["bound_t", "#c0392b"], ["regret_t", "#2471a3"]];
  for (const [key, color] of series) {
    ctx.strokeStyle = color;
    ctx.beginPath();
    rows.forEach((r, i) => (i ? ctx.lineTo(x(r.t), y(r[key])) : ctx.moveTo(x(r.t), y(r[key]))));
    ctx.stroke();
  }
  series.forEach(([key, color], i) => {
    ctx.fillStyle = color;
    ctx.fillText(key, w - pad - 60, pad + 14 * i);
  });
}

function runSimulation() {
  try {
    const out = JSON.parse(simulate($("config").value));
    const s = out.summary;
    drawCurve(parseCsv(out.csv));
    const bounds = s.bounds
      .map((b) => `${b.kind}: realized ${b.realized.toPrecision(6)} vs bound ${b.bound_value.toPrecision(6)}`)
      .join("; ");
    $("verdict").innerHTML =
      `<span class="${s.all_satisfied ? "ok" : "bad"}">${s.all_satisfied ? "bound holds" : "bound not satisfied"}</span> ` +
      (s.error ? `(${s.error})` : bounds);
    $("report").textContent = JSON.stringify({ ...s, warnings: out.warnings }, null, 2);
  } catch (e) {
    $("verdict").innerHTML = `<span class="bad">error</span>`;
    $("report").textContent = String(e.message ?? e);
  }
}

function runCertificate() {
  try {
    const report = JSON.parse(certify($("config").value));
    $("verdict").innerHTML = `<span class="${report.all_valid ? "ok" : "bad"}">${report.all_valid ? "constants certified" : "certificate violated"}</span>`;
    $("report").textContent = JSON.stringify(report, null, 2);
  } catch (e) {
    $("report").textContent = String(e.message ?? e);
  }
}

let anchor = [0.4, 0.3];

function heatColor(u) {
  const r = Math.round(255 * Math.min(1, 1.6 * u));
  const g = Math.round(255 * Math.max(0, 1.6 * u - 0.6));
  const b = Math.round(255 * (1 - u) * 0.8);
  return [r, g, b];
}

function drawHeatmap() {
  const reference = $("reference").value;
  const span = Number($("range").value);
  const entropy = reference.includes("neg_entropy");
  const lo = entropy ? 0 : -span, hi = span;
  const canvas = $("heat");
  const ctx = canvas.getContext("2d");
  const n = 200;
  let map;
  try {
    map = JSON.parse(divergence_grid(reference, anchor[0], anchor[1], lo, hi, n));
  } catch (e) {
    $("heatinfo").textContent = String(e.message ?? e);
    return;
  }
  const img = ctx.createImageData(n, n);
  // Square root compresses the dynamic range of high-degree references.
  const scale = Math.sqrt(map.max - map.min) || 1;
  map.values.forEach((v, k) => {
    const i = k % n, j = n - 1 - Math.floor(k / n);
    const [r, g, b] = v === null ? [220, 220, 220] : heatColor(Math.sqrt(v - map.min) / scale);
    const p = 4 * (j * n + i);
    img.data.set([r, g, b, 255], p);
  });
  const off = new OffscreenCanvas(n, n);
  off.getContext("2d").putImageData(img, 0, 0);
  ctx.imageSmoothingEnabled = false;
  ctx.drawImage(off, 0, 0, canvas.width, canvas.height);
  const px = ((anchor[0] - lo) / (hi - lo)) * canvas.width;
  const py = canvas.height - ((anchor[1] - lo) / (hi - lo)) * canvas.height;
  ctx.strokeStyle = "#fff";
  ctx.beginPath();
  ctx.arc(px, py, 5, 0, 2 * Math.PI);
  ctx.stroke();
  $("heatinfo").textContent =
    `anchor y = (${anchor[0].toFixed(3)}, ${anchor[1].toFixed(3)})\n` +
    `grid [${lo}, ${hi}]², ${n}×${n}\nmin ${map.min.toPrecision(5)}\nmax ${map.max.toPrecision(5)}\n` +
    (entropy ? "grey: outside the positive orthant" : "");
}

async function main() {
  await init();
  const all = JSON.parse(presets());
  const select = $("preset");
  for (const name of Object.keys(all)) select.add(new Option(name, name));
  const load = () => ($("config").value = JSON.stringify(all[select.value], null, 2));
  select.addEventListener("change", load);
  load();
  $("run").addEventListener("click", runSimulation);
  $("certify").addEventListener("click", runCertificate);
  $("reference").addEventListener("change", drawHeatmap);
  $("range").addEventListener("change", drawHeatmap);
  $("heat").addEventListener("click", (ev) => {
    const rect = ev.target.getBoundingClientRect();
    const reference = $("reference").value;
    const span = Number($("range").value);
    const lo = reference.includes("neg_entropy") ? 0 : -span;
    const u = (ev.clientX - rect.left) / rect.width, v = 1 - (ev.clientY - rect.top) / rect.height;
    anchor = [lo + u * (span - lo), lo + v * (span - lo)];
    drawHeatmap();
  });
  drawHeatmap();
  runSimulation();
}

main();
