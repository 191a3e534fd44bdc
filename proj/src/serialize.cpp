#include "charzeta/serialize.hpp"

namespace charzeta {

void to_json(json& j, const CountRecord& r) {
  j = json{{"surface", to_string(r.surface)}, {"p", r.p},           {"n", r.n},
           {"space", to_string(r.space)},     {"method", to_string(r.method)}, {"count", r.count}};
}

void to_json(json& j, const BiprojectivePoint& pt) { j = json{{"plane", pt.plane}, {"line", pt.line}}; }

void to_json(json& j, const ConicClass& c) {
  j = json{{"rank", c.rank}, {"split", c.split}, {"point_count", c.point_count}};
}

void to_json(json& j, const FiberReport& r) {
  j = json{{"base", r.base}, {"degenerate", r.degenerate}, {"count", r.count}};
  j["rank"] = r.conic ? json(r.conic->rank) : json(nullptr);
}

void to_json(json& j, const ZetaFactor& f) { j = json{{"unit", f.unit}, {"exp", f.exponent}}; }

void to_json(json& j, const LocalZetaFactors& z) { j = json{{"p", z.p}, {"factors", z.factors}}; }

void to_json(json& j, const GlobalFactor& f) {
  j = json{{"kind", to_string(f.kind)}};
  if (f.kind == FactorKind::dedekind) j["d"] = f.field;
  if (f.kind == FactorKind::dirichlet) j["character"] = quadratic_character_of(f.field).label;
  j["shift"] = f.shift;
  j["exponent"] = f.exponent;
}

void to_json(json& j, const ElementaryFactor& f) {
  j = json{{"prime", f.prime}, {"sign", f.sign > 0 ? "-" : "+"}, {"shift", f.shift}, {"exponent", f.exponent}};
}

void to_json(json& j, const GlobalZetaExpr& e) { j = json{{"factors", e.factors}, {"elementary", e.elementary}}; }

void to_json(json& j, const GlobalCheck& c) {
  j = json{{"surface", to_string(c.surface)},
           {"space", to_string(c.space)},
           {"p", c.p},
           {"mode", to_string(c.mode)},
           {"terms", c.terms},
           {"fiberwise_terms", c.fiberwise_terms},
           {"counts", c.counts},
           {"expected", c.expected}};
  j["recovered"] = c.recovered ? json(*c.recovered) : json(nullptr);
  j["closed_form_match"] = c.closed_form_match;
  j["dedekind_match"] = c.dedekind_match;
  j["formula_match"] = c.formula_match;
  j["first_divergence"] = c.first_divergence ? json(*c.first_divergence) : json(nullptr);
  j["error"] = c.error;
  j["pass"] = c.pass;
}

void to_json(json& j, const LaurentLeading& l) {
  j = json{{"s0", l.s0}, {"order", l.order}, {"coefficient", l.coefficient}};
}

void to_json(json& j, const Table1Cell& c) {
  j = json{{"surface", to_string(c.surface)}, {"s0", c.s0},           {"order_expected", c.order_expected},
           {"order_got", c.order_got},        {"coeff_expected", c.coeff_expected},
           {"coeff_got", c.coeff_got},        {"rel_err", c.rel_err}, {"order_from_blank", c.order_from_blank},
           {"pass", c.pass}};
}

void to_json(json& j, const MahlerEstimate& m) {
  j = json{{"estimate", m.estimate}, {"stderr", m.standard_error}, {"samples", m.samples}, {"seed", m.seed}};
}

}  // namespace charzeta
