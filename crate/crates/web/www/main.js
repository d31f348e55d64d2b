import init, { describe, distribution, codeword } from "./pkg/goldcode_web.js";

const $ = (id) => document.getElementById(id);
const SVG = "http://www.w3.org/2000/svg";

function params() {
  return ["m", "d", "e", "k"].map((id) => Number($(id).value)).concat([$("family").value]);
}

function el(name, attrs, text) {
  const node = document.createElementNS(SVG, name);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  if (text !== undefined) node.textContent = text;
  return node;
}

function show(target, fn) {
  try {
    target.classList.remove("error");
    return fn();
  } catch (err) {
    target.classList.add("error");
    target.textContent = String(err.message ?? err);
    return null;
  }
}

function refreshDescribe() {
  show($("describe"), () => {
    const info = JSON.parse(describe(...params()));
    $("describe").textContent =
      `e = ${info.params.e}, exponents ${info.exponents.join(", ")}, ` +
      `minimum rank ${info.rank_lower_bound}, DC values {${info.dc_support.join(", ")}}`;
  });
}

function bins(table) {
  const rows = table.alpha.map((b) => ({ label: `r=${b.r} ${b.eps > 0 ? "+" : "-"}`, count: BigInt(b.count) }));
  rows.push({ label: "balanced", count: BigInt(table.balanced) });
  return rows;
}

function drawChart(result) {
  const svg = $("chart");
  svg.replaceChildren();
  const rows = bins(result.closed);
  const enumerated = result.enumerated ? bins(result.enumerated) : null;
  const max = rows.reduce((a, r) => (r.count > a ? r.count : a), 1n);
  const width = Number(svg.getAttribute("width"));
  const height = Number(svg.getAttribute("height")) - 40;
  const slot = width / rows.length;
  rows.forEach((row, i) => {
    const h = Number((row.count * 1000n) / max) / 1000 * height;
    const x = i * slot + slot * 0.15;
    svg.append(el("rect", { x, y: height - h + 10, width: slot * 0.7, height: h, fill: "#4a7ab5" }));
    const ok = !enumerated || enumerated[i].count === row.count;
    svg.append(el("text", { x: x, y: height + 25 }, `${row.label}: ${row.count}${ok ? "" : " (mismatch)"}`));
  });
}

function runDistribution() {
  const status = $("dist-status");
  show(status, () => {
    const t0 = performance.now();
    const result = JSON.parse(distribution(...params(), $("enumerate").checked));
    const ms = (performance.now() - t0).toFixed(0);
    status.textContent = result.enumerated
      ? `enumeration ${result.match ? "matches" : "DOES NOT match"} the closed form (${ms} ms)`
      : `closed form only (${ms} ms)`;
    drawChart(result);
  });
}

function runCodeword() {
  const status = $("word-status");
  show(status, () => {
    const w = JSON.parse(codeword(...params(), $("coeffs").value));
    status.textContent =
      `weight ${w.weight}, DC ${w.dc}` + (w.rank === null ? "" : `, rank ${w.rank}`);
    const svg = $("strip");
    svg.replaceChildren();
    const cell = Number(svg.getAttribute("width")) / w.bits.length;
    [...w.bits].forEach((b, i) => {
      if (b === "1") svg.append(el("rect", { x: i * cell, y: 0, width: Math.max(cell, 1), height: 40, fill: "#222" }));
    });
  });
}

await init();
for (const id of ["m", "d", "e", "k", "family"]) $(id).addEventListener("change", refreshDescribe);
$("run-dist").addEventListener("click", runDistribution);
$("run-word").addEventListener("click", runCodeword);
refreshDescribe();
runDistribution();
runCodeword();
