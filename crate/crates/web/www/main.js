import init, { lattice_svg, lattice_dot, analysis_json, equivalence_json, gallery_json } from "./pkg/starlab_web.js";

const $ = (id) => document.getElementById(id);
const specInput = $("spec");
const relInput = $("rel");
const view = $("view");
const status = $("status");
let current = "lattice";

function el(tag, attrs = {}, ...children) {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  for (const c of children) node.append(c);
  return node;
}

const setText = (s) => "{" + s.join(",") + "}";

function renderLattice(spec, rel) {
  view.innerHTML = lattice_svg(spec, rel);
  const dot = el("details", {}, el("summary", {}, "DOT"), el("pre", {}, lattice_dot(spec, rel)));
  view.append(dot);
}

function outcomeCell(c) {
  const cls = c.status === "fail" ? "fail" : c.status === "hypothesis_not_met" ? "unmet" : "pass";
  const detail = c.status === "fail" ? c.witness : c.unmet ? c.unmet.join("; ") : "";
  return el("td", { class: cls }, detail ? `${c.status}: ${detail}` : c.status);
}

function renderAnalysis(spec) {
  const r = JSON.parse(analysis_json(spec));
  view.replaceChildren();
  const t = r.totals;
  view.append(el("p", {}, `${r.semigroup.name}: ${r.semigroup.size} elements, proper ${r.properness.proper}. ` +
    `${t.pass} passed, ${t.fail} failed, ${t.hypothesis_not_met} with hypotheses not met.`));
  const lat = el("table", {}, el("tr", {}, el("th", {}, "relation"), el("th", {}, "closed sets"),
    el("th", {}, "orthomodular"), el("th", {}, "modular"), el("th", {}, "centre")));
  for (const l of r.lattices) {
    lat.append(el("tr", {}, el("td", {}, l.relation), el("td", {}, String(l.size)),
      el("td", {}, String(l.orthomodular)), el("td", {}, String(l.modular ?? "not computed")),
      el("td", {}, String(l.centre_size ?? ""))));
  }
  view.append(lat);
  for (const section of r.sections) {
    const table = el("table", {});
    for (const c of section.checks) table.append(el("tr", {}, el("td", {}, c.name), outcomeCell(c)));
    view.append(el("h3", {}, section.name), table);
  }
}

function renderEquivalence(spec) {
  const r = JSON.parse(equivalence_json(spec));
  const e = r.equivalence;
  view.replaceChildren();
  view.append(el("p", {}, `${r.semigroup}: ${r.size} elements, proper ${r.proper}, reflexive ${e.reflexive}, ` +
    `perp-additive ${e.perp_additive}, nabla-additive ${e.nabla_additive}.`));
  const classes = el("ol", {});
  for (const c of e.classes) classes.append(el("li", {}, c.map(setText).join(" ~ ")));
  view.append(el("h3", {}, "Equivalence classes"), classes);
  if (e.non_reflexive.length) {
    view.append(el("h3", {}, "Not equivalent to themselves"), el("p", {}, e.non_reflexive.map(setText).join(", ")));
  }
  view.append(el("h3", {}, "Finite"), el("p", {}, e.sim_finite.map(setText).join(", ") || "none"));
  const dec = el("table", {}, el("tr", {}, el("th", {}, "kind"), el("th", {}, "part"),
    el("th", {}, "complement"), el("th", {}, "generated by")));
  for (const d of r.decompositions.results) {
    dec.append(el("tr", {}, el("td", {}, d.kind), el("td", {}, setText(d.a)),
      el("td", {}, setText(d.complement)), el("td", {}, setText(d.certificate))));
  }
  view.append(el("h3", {}, "Decompositions"), dec);
  const gated = r.decompositions.checks.filter((c) => c.status !== "pass");
  if (gated.length) {
    const t = el("table", {});
    for (const c of gated) t.append(el("tr", {}, el("td", {}, c.name), outcomeCell(c)));
    view.append(t);
  }
  for (const f of r.decompositions.findings) view.append(el("p", {}, f));
}

function render() {
  const spec = specInput.value.trim();
  status.textContent = "";
  try {
    if (current === "lattice") renderLattice(spec, relInput.value);
    else if (current === "analysis") renderAnalysis(spec);
    else renderEquivalence(spec);
  } catch (err) {
    status.textContent = String(err.message ?? err);
  }
}

await init();
for (const g of JSON.parse(gallery_json())) {
  $("gallery").append(el("option", { value: g.spec }, g.description));
}
for (const b of document.querySelectorAll(".tabs button")) {
  b.addEventListener("click", () => {
    current = b.dataset.view;
    for (const o of document.querySelectorAll(".tabs button")) o.setAttribute("aria-pressed", String(o === b));
    render();
  });
}
specInput.addEventListener("change", render);
relInput.addEventListener("change", render);
$("controls").addEventListener("submit", (e) => { e.preventDefault(); render(); });
render();
