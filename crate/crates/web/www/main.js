import init, { bounds_for, families, sweep_family, witness_family } from "./pkg/ergogap_web.js";

const TOL = 1e-9;
const $ = (id) => document.getElementById(id);

function call(f, ...args) {
  try {
    return { ok: JSON.parse(f(...args)) };
  } catch (err) {
    return { err: String(err) };
  }
}

function fillFamilies(list) {
  for (const f of list) {
    const opt = (el) => {
      const o = document.createElement("option");
      o.value = o.textContent = f.name;
      el.appendChild(o);
    };
    if (f.uses_p) opt($("sweep-family"));
    opt($("witness-family"));
  }
  $("sweep-family").value = "ghz-white-noise";
  $("witness-family").value = "ghz-white-noise";
}

function plot(rows) {
  const canvas = $("sweep-plot");
  const ctx = canvas.getContext("2d");
  const w = canvas.width, h = canvas.height, pad = 40;
  ctx.clearRect(0, 0, w, h);
  if (rows.length === 0) return;

  const p0 = rows[0].p, p1 = rows[rows.length - 1].p;
  const ymax = Math.max(...rows.map((r) => Math.max(r.gap, r.min_bound))) * 1.1 || 1;
  const x = (p) => pad + ((p - p0) / (p1 - p0 || 1)) * (w - 2 * pad);
  const y = (v) => h - pad - (v / ymax) * (h - 2 * pad);

  ctx.fillStyle = "#cfe8cf";
  const half = rows.length > 1 ? (x(rows[1].p) - x(rows[0].p)) / 2 : 4;
  for (const r of rows) {
    if (r.verdict === "Entangled") ctx.fillRect(x(r.p) - half, pad, 2 * half, h - 2 * pad);
  }

  ctx.strokeStyle = "#888";
  ctx.fillStyle = "#222";
  ctx.font = "12px sans-serif";
  ctx.beginPath();
  ctx.moveTo(pad, pad);
  ctx.lineTo(pad, h - pad);
  ctx.lineTo(w - pad, h - pad);
  ctx.stroke();
  ctx.fillText(p0.toFixed(2), pad - 10, h - pad + 16);
  ctx.fillText(p1.toFixed(2), w - pad - 10, h - pad + 16);
  ctx.fillText("p", w / 2, h - 8);
  ctx.fillText(ymax.toFixed(2) + " E", 2, pad);

  const line = (key, color) => {
    ctx.strokeStyle = color;
    ctx.lineWidth = 2;
    ctx.beginPath();
    rows.forEach((r, i) => (i ? ctx.lineTo(x(r.p), y(r[key])) : ctx.moveTo(x(r.p), y(r[key]))));
    ctx.stroke();
  };
  line("min_bound", "#d0552b");
  line("gap", "#1f5fbf");
}

function runSweep(ev) {
  if (ev) ev.preventDefault();
  const res = call(sweep_family, $("sweep-family").value, 2,
    Number($("sweep-start").value), Number($("sweep-end").value),
    Number($("sweep-steps").value), TOL);
  if (res.err) {
    alert(res.err);
    return;
  }
  plot(res.ok);
}

function fmt(x) {
  return typeof x === "number" ? Number(x.toPrecision(12)) : x;
}

function runWitness() {
  const p = Number($("witness-p").value);
  $("witness-p-value").textContent = p.toFixed(2);
  const res = call(witness_family, $("witness-family").value, Number($("witness-d").value),
    p, BigInt($("witness-seed").value || 0), TOL);
  if (res.err) {
    $("witness-out").textContent = res.err;
    return;
  }
  const { verdict: v, report: r, fixed_operators: ops } = res.ok;
  const lines = [
    `verdict          ${v.verdict}`,
    `gap              ${fmt(v.gap)} E`,
    `Y - Z            ${fmt(v.y_minus_z)}`,
    `M(d)             ${fmt(v.m_d)}`,
    `margin           ${fmt(v.margin)} E`,
    `global ergotropy ${fmt(r.global_ergotropy)} E`,
    `local ergotropy  ${fmt(r.local_ergotropy_total)} E`,
  ];
  if (ops) {
    for (const [name, o] of [["GHZ-type", ops.ghz_type], ["W-type", ops.w_type]]) {
      lines.push(`${name.padEnd(16)} max ${fmt(o.max_abs_value)}${o.violated ? "  (violated)" : ""}`);
    }
  }
  $("witness-out").textContent = lines.join("\n");
}

function runBounds() {
  const res = call(bounds_for, Number($("bounds-d").value));
  if (res.err) {
    $("bounds-out").textContent = res.err;
    return;
  }
  const b = res.ok;
  $("bounds-out").textContent = [
    `M(${b.d}) = ${fmt(b.m_d)}   (closed-form polynomial: ${fmt(b.m_d_polynomial)})`,
    `degeneracies:  ${b.degeneracies.join(" ")}`,
    `level starts:  ${b.level_starts.join(" ")}`,
  ].join("\n");
}

await init();
fillFamilies(JSON.parse(families()));
$("sweep-form").addEventListener("submit", runSweep);
$("witness-form").addEventListener("input", runWitness);
$("bounds-form").addEventListener("input", runBounds);
runSweep();
runWitness();
runBounds();
