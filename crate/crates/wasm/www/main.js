import init, { generate, construct, check, exact } from "./pkg/rainbow_wasm.js";

const $ = (id) => document.getElementById(id);
const canvas = $("view");
const ctx = canvas.getContext("2d");

let graph = null;
let colors = [];
let witness = null;

function palette(c) {
  if (!c) return "#bbb";
  const hue = (c * 137.508) % 360;
  return `hsl(${hue}, 70%, 45%)`;
}

function positions(n) {
  const r = canvas.width / 2 - 30;
  const c = canvas.width / 2;
  return Array.from({ length: n }, (_, i) => {
    const a = (2 * Math.PI * i) / n - Math.PI / 2;
    return [c + r * Math.cos(a), c + r * Math.sin(a)];
  });
}

function draw() {
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  if (!graph) return;
  const pos = positions(graph.n);
  ctx.lineWidth = 3;
  graph.edges.forEach(([u, v], i) => {
    ctx.strokeStyle = palette(colors[i]);
    ctx.beginPath();
    ctx.moveTo(...pos[u]);
    ctx.lineTo(...pos[v]);
    ctx.stroke();
  });
  pos.forEach(([x, y], v) => {
    const hit = witness && witness.includes(v);
    ctx.fillStyle = hit ? "#d00" : "#222";
    ctx.beginPath();
    ctx.arc(x, y, hit ? 10 : 7, 0, 2 * Math.PI);
    ctx.fill();
    ctx.fillStyle = "#fff";
    ctx.font = "9px sans-serif";
    ctx.textAlign = "center";
    ctx.textBaseline = "middle";
    ctx.fillText(String(v), x, y);
  });
}

function status(text, cls = "") {
  $("status").textContent = text;
  $("status").className = cls;
}

function guarded(f) {
  return (...args) => {
    try {
      f(...args);
    } catch (e) {
      status(String(e), "bad");
    }
  };
}

function graphJson() {
  return JSON.stringify(graph);
}

function runCheck() {
  const r = JSON.parse(check(graphJson(), JSON.stringify(colors)));
  witness = r.witness;
  if (r.ok) status(`rainbow connected with ${r.k} colors`, "good");
  else status(`no rainbow path between ${r.witness[0]} and ${r.witness[1]}`, "bad");
  draw();
}

$("gen").onclick = guarded(() => {
  graph = JSON.parse(generate($("family").value, $("params").value, Number($("seed").value)));
  colors = new Array(graph.edges.length).fill(1);
  witness = null;
  $("summary").textContent = `n=${graph.n} m=${graph.edges.length}`;
  $("trace").textContent = "";
  status("uncolored; pick an algorithm");
  draw();
});

$("construct").onclick = guarded(() => {
  if (!graph) return;
  const r = JSON.parse(construct(graphJson()));
  colors = r.colors;
  const bound = r.bound === null ? `none (κ=${r.kappa})` : r.bound;
  $("summary").textContent = `n=${graph.n} m=${graph.edges.length} κ=${r.kappa} k=${r.k} bound=${bound}`;
  $("trace").textContent = r.trace.join("\n");
  runCheck();
});

$("exact").onclick = guarded(() => {
  if (!graph) return;
  const r = JSON.parse(exact(graphJson()));
  colors = r.colors;
  $("summary").textContent = `n=${graph.n} m=${graph.edges.length} rc=${r.k}`;
  $("trace").textContent = "";
  runCheck();
});

$("check").onclick = guarded(() => graph && runCheck());

function distanceToSegment(p, a, b) {
  const [dx, dy] = [b[0] - a[0], b[1] - a[1]];
  const len2 = dx * dx + dy * dy || 1;
  const t = Math.max(0, Math.min(1, ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2));
  return Math.hypot(p[0] - a[0] - t * dx, p[1] - a[1] - t * dy);
}

canvas.onclick = guarded((ev) => {
  if (!graph) return;
  const rect = canvas.getBoundingClientRect();
  const p = [ev.clientX - rect.left, ev.clientY - rect.top];
  const pos = positions(graph.n);
  let best = -1;
  let bestDist = 6;
  graph.edges.forEach(([u, v], i) => {
    const d = distanceToSegment(p, pos[u], pos[v]);
    if (d < bestDist) [best, bestDist] = [i, d];
  });
  if (best < 0) return;
  const top = Math.max(...colors);
  colors[best] = (colors[best] % (top + 1)) + 1;
  runCheck();
});

await init();
$("gen").click();
