import init, { solve, simulate, generate } from "./pkg/swapsched_web.js";

const $ = (id) => document.getElementById(id);
const palette = ["#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"];

function fail(target, err) {
  target.textContent = String(err.message ?? err);
  target.className = "error";
}

function cameraScenario() {
  const jobs = [];
  for (let t = 0; t < 10; t++) {
    jobs.push({ id: `frame${String(t).padStart(3, "0")}`, arrival: t, work: 2,
      deadline_class: { kind: "hard", deadline: t + 2 }, priority_label: 1, origin_node: "camera" });
  }
  return {
    schema_version: 1, kind: "simulate", horizon: 12,
    policies: { admission: "offload", assignment: "earliest_finish" },
    nodes: [
      { id: "camera", rate: 1, link_latency: 0, zone: "hostile" },
      { id: "hpc", rate: 4, link_latency: 1, zone: "rear" },
    ],
    jobs,
  };
}

// Stacked bars of allocated units per slot, one colour per mission.
function drawSchedule(view) {
  const canvas = $("schedule"), ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const rows = view.report.schedule, slots = view.capacity.length;
  const totals = Array.from({ length: slots }, (_, t) => rows.reduce((s, r) => s + r[t], 0));
  const top = Math.max(1, ...totals, ...view.capacity);
  const w = canvas.width / slots, h = (canvas.height - 30) / top;
  for (let t = 0; t < slots; t++) {
    let y = canvas.height - 20;
    rows.forEach((row, i) => {
      ctx.fillStyle = palette[i % palette.length];
      ctx.fillRect(t * w + 4, y - row[t] * h, w - 8, row[t] * h);
      y -= row[t] * h;
    });
    ctx.strokeStyle = "#000";
    ctx.beginPath();
    ctx.moveTo(t * w + 2, canvas.height - 20 - view.capacity[t] * h);
    ctx.lineTo((t + 1) * w - 2, canvas.height - 20 - view.capacity[t] * h);
    ctx.stroke();
    ctx.fillStyle = "#333";
    ctx.fillText(String(t), t * w + w / 2 - 3, canvas.height - 5);
  }
  view.missions.forEach((id, i) => {
    ctx.fillStyle = palette[i % palette.length];
    ctx.fillText(`${id}${view.report.success[i] ? "" : " (abandoned)"}`, 8 + (i % 8) * 110, 12 + Math.floor(i / 8) * 14);
  });
}

// Remaining headroom per slot; negative would mean an infeasible schedule.
function drawUsage(view) {
  const canvas = $("usage"), ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const u = view.usage, top = Math.max(1, ...view.capacity);
  const x = (t) => (t + 0.5) * canvas.width / u.length;
  const y = (v) => canvas.height - 15 - (v / top) * (canvas.height - 30);
  ctx.strokeStyle = "#bbb";
  ctx.beginPath(); ctx.moveTo(0, y(0)); ctx.lineTo(canvas.width, y(0)); ctx.stroke();
  ctx.strokeStyle = "#4e79a7";
  ctx.beginPath();
  u.forEach((v, t) => (t ? ctx.lineTo(x(t), y(v)) : ctx.moveTo(x(t), y(v))));
  ctx.stroke();
  ctx.fillStyle = "#333";
  ctx.fillText("usage (headroom) per slot", 8, 12);
}

function runSolve() {
  try {
    const view = JSON.parse(solve($("scenario").value, $("solver").value, $("mode").value,
      Number($("budget").value), Number($("seed").value)));
    const r = view.report;
    $("summary").className = "";
    $("summary").textContent = `${r.solver}: value ${r.value}, bound ${r.upper_bound}, ratio ${r.ratio.toFixed(3)}, ` +
      `optimal ${r.optimal}, ${r.success.filter((s) => !s).length} abandoned, ${r.elapsed_ms.toFixed(2)} ms`;
    drawSchedule(view);
    drawUsage(view);
  } catch (err) {
    fail($("summary"), err);
  }
}

function runSimulate(policy) {
  try {
    const view = JSON.parse(simulate($("scenario").value, policy, Number($("seed").value)));
    const m = view.metrics;
    $("sim-summary").className = "";
    $("sim-summary").textContent = `${policy}: ${m.completed}/${m.total_jobs} completed, ${m.failed_deadline} missed deadlines, ` +
      `${m.terminated_at_admission} terminated, ${m.in_flight_at_horizon} in flight, ${m.offloaded} off-loaded`;
    $("log").textContent = view.log;
  } catch (err) {
    fail($("sim-summary"), err);
  }
}

function runGenerate() {
  try {
    $("scenario").value = generate(Number($("missions").value), Number($("slots").value), Number($("seed").value));
  } catch (err) {
    fail($("summary"), err);
  }
}

await init();
$("generate").onclick = runGenerate;
$("camera").onclick = () => { $("scenario").value = JSON.stringify(cameraScenario(), null, 2); };
$("solve").onclick = runSolve;
$("sim-terminate").onclick = () => runSimulate("terminate");
$("sim-offload").onclick = () => runSimulate("offload");
runGenerate();
runSolve();
