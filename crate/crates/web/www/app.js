import init, { wigner_slice, bell_curve, bell_max } from "./pkg/cv_epr_web.js";

const $ = (id) => document.getElementById(id);

function fail(el, e) {
  el.textContent = String(e.message ?? e);
  el.className = "err";
}

function fillQuadratures() {
  const modes = Number($("w-modes").value);
  const names = [];
  for (let k = 1; k <= modes; k++) names.push(`x${k}`, `p${k}`);
  for (const [id, pick] of [["w-qx", 0], ["w-qy", 1]]) {
    const sel = $(id);
    const keep = sel.value;
    sel.innerHTML = names.map((n) => `<option>${n}</option>`).join("");
    sel.value = names.includes(keep) ? keep : names[pick];
  }
}

// Diverging colour map: blue for negative values, red for positive.
function colour(v, vmax) {
  const t = Math.max(-1, Math.min(1, v / vmax));
  const a = Math.round(255 * (1 - Math.abs(t)));
  return t >= 0 ? [255, a, a] : [a, a, 255];
}

function drawWigner() {
  const msg = $("w-msg");
  msg.textContent = "";
  const canvas = $("w-canvas");
  const steps = 120;
  let w;
  try {
    w = wigner_slice($("w-family").value, Number($("w-modes").value), Number($("w-param").value),
      $("w-qx").value, $("w-qy").value, Number($("w-extent").value), steps);
  } catch (e) {
    return fail(msg, e);
  }
  let vmax = 0;
  for (const v of w) if (Number.isFinite(v)) vmax = Math.max(vmax, Math.abs(v));
  const ctx = canvas.getContext("2d");
  const img = ctx.createImageData(steps, steps);
  w.forEach((v, i) => {
    const [r, g, b] = Number.isFinite(v) ? colour(v, vmax || 1) : [0, 0, 0];
    img.data.set([r, g, b, 255], 4 * i);
  });
  const tmp = new OffscreenCanvas(steps, steps);
  tmp.getContext("2d").putImageData(img, 0, 0);
  ctx.imageSmoothingEnabled = false;
  ctx.drawImage(tmp, 0, 0, canvas.width, canvas.height);
  msg.textContent = `max |W| = ${vmax.toExponential(4)}`;
  msg.className = "";
}

function drawCurve() {
  const msg = $("c-msg");
  msg.textContent = "";
  const steps = 400;
  const jmax = Number($("c-jmax").value);
  let b;
  try {
    b = bell_curve($("c-branch").value, Number($("c-s").value), jmax, steps);
  } catch (e) {
    return fail(msg, e);
  }
  const canvas = $("c-canvas");
  const ctx = canvas.getContext("2d");
  const { width: W, height: H } = canvas;
  const pad = 36;
  const finite = Array.from(b).filter(Number.isFinite);
  const lo = Math.min(1.5, ...finite);
  const hi = Math.max(2.5, ...finite);
  const x = (i) => pad + ((W - 2 * pad) * i) / (steps - 1);
  const y = (v) => H - pad - ((H - 2 * pad) * (v - lo)) / (hi - lo);
  ctx.clearRect(0, 0, W, H);
  ctx.strokeStyle = "#999";
  ctx.setLineDash([4, 4]);
  ctx.beginPath();
  ctx.moveTo(pad, y(2));
  ctx.lineTo(W - pad, y(2));
  ctx.stroke();
  ctx.setLineDash([]);
  ctx.strokeStyle = "#c33";
  ctx.beginPath();
  b.forEach((v, i) => (i ? ctx.lineTo(x(i), y(v)) : ctx.moveTo(x(i), y(v))));
  ctx.stroke();
  ctx.fillStyle = "#444";
  ctx.fillText("B = 2", W - pad - 30, y(2) - 4);
  ctx.fillText(`J: 0 .. ${jmax}`, pad, H - 10);
  ctx.fillText(`B: ${lo.toFixed(2)} .. ${hi.toFixed(2)}`, pad, 14);
  const best = Math.max(...finite);
  msg.textContent = `largest sampled B = ${best.toFixed(6)}`;
  msg.className = "";
}

function runMax() {
  const out = $("m-out");
  try {
    const rep = JSON.parse(bell_max($("m-branch").value, Number($("m-s").value)));
    out.textContent = `max B = ${rep.max.toFixed(6)} at J = ${rep.argmax[1].toExponential(4)}\n` +
      `regime: ${rep.regime}, converged: ${rep.converged}, iterations: ${rep.iterations}`;
    out.className = "";
  } catch (e) {
    fail(out, e);
  }
}

await init();
fillQuadratures();
$("w-modes").addEventListener("change", fillQuadratures);
$("w-go").addEventListener("click", drawWigner);
$("c-go").addEventListener("click", drawCurve);
$("m-go").addEventListener("click", runMax);
drawWigner();
drawCurve();
