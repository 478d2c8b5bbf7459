#include "abnorm/abnormal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/LU>

#include "abnorm/errors.hpp"
#include "abnorm/linalg.hpp"

namespace abnorm {

std::string to_string(Verdict v) { return v == Verdict::NonStrict ? "nonstrict" : "strict"; }

std::string to_string(Reason r) {
  switch (r) {
    case Reason::C1C2Zero:
      return "C1C2Zero";
    case Reason::AxisConditionHolds:
      return "AxisConditionHolds";
    case Reason::AxisConditionFails:
      return "AxisConditionFails";
    case Reason::C1ZeroC2Nonzero:
      return "C1ZeroC2Nonzero";
  }
  return "AxisConditionFails";
}

std::string to_string(Combined c) {
  switch (c) {
    case Combined::NonStrict:
      return "nonstrict";
    case Combined::Strict:
      return "strict";
    case Combined::Mixed:
      return "mixed";
  }
  return "mixed";
}

std::string to_string(Dim3Verdict v) {
  switch (v) {
    case Dim3Verdict::NonStrictForAllMetrics:
      return "NonStrictForAllMetrics";
    case Dim3Verdict::StrictForAllMetrics:
      return "StrictForAllMetrics";
    case Dim3Verdict::MetricDependent:
      return "MetricDependent";
  }
  return "MetricDependent";
}

namespace {

double axis_u2(const SeminormBody& b, int s) { return s / b.gauge(Vector2(0.0, s)); }

}  // namespace

std::array<ExtremalDescriptor, 2> abnormal_extremals(const CanonicalBasis& basis, const SeminormBody& body) {
  std::array<ExtremalDescriptor, 2> out;
  for (std::size_t i = 0; i < 2; ++i) {
    ExtremalDescriptor& d = out[i];
    d.s = i == 0 ? 1 : -1;
    d.u2 = axis_u2(body, d.s);
    d.velocity_canonical = Vector2(0.0, d.u2);
    d.velocity = d.u2 * basis.e2;
    d.label = "exp(t * (" + format_vector(d.velocity) + "))";
  }
  return out;
}

std::array<ExtremalDescriptor, 2> abnormal_extremals(const StructureConstants& alg, std::span<const Vector4> p,
                                                     const SeminormBody& body) {
  return abnormal_extremals(canonical_basis(alg, p), body);
}

Vector4 Witness::psi(double t) const { return {k, psi2, 0.0, phi4 * std::exp(c3 * u2 * t)}; }

Vector4 Witness::psi_dot(double t) const { return {0.0, 0.0, 0.0, c3 * u2 * phi4 * std::exp(c3 * u2 * t)}; }

Combined StrictnessReport::combined() const {
  const bool a = directions[0].verdict == Verdict::NonStrict;
  const bool b = directions[1].verdict == Verdict::NonStrict;
  if (a && b) return Combined::NonStrict;
  if (!a && !b) return Combined::Strict;
  return Combined::Mixed;
}

bool c23_is_zero(const Vector4& c23, int index) {
  return std::abs(c23[index]) <= 1e-9 * std::max(1.0, c23.cwiseAbs().maxCoeff());
}

StrictnessReport classify(const CanonicalBasis& basis, const SeminormBody& body) {
  StrictnessReport report;
  report.basis = basis;
  const bool c1_zero = c23_is_zero(basis.c23, 0);
  const bool c2_zero = c23_is_zero(basis.c23, 1);
  for (std::size_t i = 0; i < 2; ++i) {
    DirectionVerdict& d = report.directions[i];
    d.s = i == 0 ? 1 : -1;
    d.u2 = axis_u2(body, d.s);
    d.support_axis = body.support(Vector2(0.0, d.s));
    d.inverse_gauge = 1.0 / body.gauge(Vector2(0.0, d.s));

    std::optional<double> k;
    if (c1_zero && c2_zero) {
      d.reason = Reason::C1C2Zero;
      k = body.supporting_covector(Vector2(0.0, d.u2))[0];
    } else if (!c1_zero) {
      if (axis_condition(body, d.s)) {
        d.reason = Reason::AxisConditionHolds;
        k = 0.0;
      } else {
        d.reason = Reason::AxisConditionFails;
      }
    } else {
      d.reason = Reason::C1ZeroC2Nonzero;
    }
    if (k) {
      d.verdict = Verdict::NonStrict;
      d.pmp_max = 1.0;
      Witness w;
      w.k = *k;
      w.psi2 = 1.0 / d.u2;
      w.phi4 = 1.0;
      w.c3 = basis.c23[2];
      w.u2 = d.u2;
      d.witness = w;
    } else {
      d.verdict = Verdict::Strict;
      d.pmp_max = 0.0;
    }
  }
  return report;
}

StrictnessReport classify(const StructureConstants& alg, std::span<const Vector4> p, const SeminormBody& body) {
  return classify(canonical_basis(alg, p), body);
}

Dim3Report classify_dim3(const StructureConstants& alg, std::span<const Vector4> p,
                         const std::optional<Eigen::Matrix3d>& metric_gram) {
  if (p.size() != 3) throw InvalidParameters("dim-3 classification needs three spanners");
  if (!generates(alg, p)) throw NotGenerating();

  Eigen::MatrixXd span(kDim, 3);
  for (Eigen::Index j = 0; j < 3; ++j) span.col(j) = p[static_cast<std::size_t>(j)];

  Dim3Report out;
  out.p1 = intersect(span, normalizer(alg, p));
  if (out.p1.cols() == 0) {
    out.detail = "p ∩ N(p) = 0";
    return out;
  }
  if (out.p1.cols() > 1) throw std::logic_error("p ∩ N(p) has dimension > 1");
  out.exists = true;

  Vector4 x = out.p1.col(0);
  const Eigen::Index lead = [&] {
    Eigen::Index idx = 0;
    x.cwiseAbs().maxCoeff(&idx);
    return idx;
  }();
  if (x[lead] < 0) x = -x;
  out.direction = x;

  Eigen::MatrixXd images(kDim, 3);
  for (Eigen::Index j = 0; j < 3; ++j) images.col(j) = bracket(alg, x, p[static_cast<std::size_t>(j)]);
  const int image_rank = numerical_rank(images);
  const double image_scale = images.cwiseAbs().maxCoeff();
  if (image_scale <= kTolerance) {
    out.verdict = Dim3Verdict::NonStrictForAllMetrics;
    out.detail = "[p1, p] = 0";
  } else if (image_rank > 0 && in_span(images, x)) {
    out.verdict = Dim3Verdict::StrictForAllMetrics;
    out.detail = "p1 ⊂ [p1, p]";
  } else {
    out.verdict = Dim3Verdict::MetricDependent;
    out.detail = "[p1, p] ≠ 0 and p1 ⊄ [p1, p]";
  }

  if (metric_gram) {
    // The p-component of a normal covector is transported by exp(t ad X) and must stay the
    // supporting covector (X, .)_G; that holds iff (X, [X, f_j])_G = 0 for every spanner.
    const Eigen::Matrix3d g = 0.5 * (*metric_gram + metric_gram->transpose());
    const auto lu = span.fullPivLu();
    const Eigen::Vector3d xs = lu.solve(Eigen::VectorXd(x));
    double worst = 0.0;
    double scale = 1.0;
    for (Eigen::Index j = 0; j < 3; ++j) {
      const Eigen::Vector3d ys = lu.solve(Eigen::VectorXd(images.col(j)));
      worst = std::max(worst, std::abs(xs.dot(g * ys)));
      scale = std::max(scale, std::abs(xs.dot(g * xs)) + ys.norm());
    }
    out.metric_nonstrict = worst <= 1e-9 * scale;
  }
  return out;
}

Theorem3Summary theorem3_dispatch(const Catalog& catalog, const AlgebraId& id, std::span<const Vector4> p,
                                  const SeminormBody& body) {
  Theorem3Summary out;
  const FamilyInfo& fam = catalog.family(id.family);
  const StructureConstants alg = catalog.instantiate(id);
  out.computed = classify(alg, p, body);

  const std::string& f = fam.id;
  const double alpha = id.params.empty() ? 0.0 : id.params[0];
  enum class Rule { Nonstrict, AxisCondition, Strict, Silent } rule = Rule::Silent;

  if (f == "g4.8" && alpha == 0.0) {
    out.case_label = "1.1";
    rule = Rule::Nonstrict;
  } else if (f == "g4.10") {
    out.case_label = "1.2";
    rule = Rule::Nonstrict;
  } else if (f == "g3.1+g1" || f == "g3.2+g1" || f == "g3.3+g1" || f == "g3.4+g1" || f == "g3.5+g1") {
    out.case_label = "1.3";
    rule = Rule::Nonstrict;
  } else if (f == "g4.1" || f == "g4.2" || f == "g4.3" || f == "g4.4" || f == "g4.5" || f == "g4.6") {
    out.case_label = "1.4";
    rule = Rule::Nonstrict;
  } else if (f == "g3.7+g1" || f == "g4.7" || f == "g4.9" || (f == "g4.8" && alpha < 1.0)) {
    out.case_label = "2";
    rule = Rule::AxisCondition;
  } else if (f == "g3.6+g1") {
    out.sl2_type = classify_sl2(alg, p).tag;
    switch (*out.sl2_type) {
      case SL2Tag::TypeI:
        out.case_label = "2";
        rule = Rule::AxisCondition;
        break;
      case SL2Tag::TypeIIa:
      case SL2Tag::TypeIIb:
      case SL2Tag::TypeIIc:
        out.case_label = "3";
        rule = Rule::Strict;
        break;
      case SL2Tag::Degenerate:
        out.case_label = "none";
        break;
    }
  } else {
    out.case_label = "none";
  }

  for (std::size_t i = 0; i < 2; ++i) {
    const int s = i == 0 ? 1 : -1;
    switch (rule) {
      case Rule::Nonstrict:
        out.implied[i] = Verdict::NonStrict;
        break;
      case Rule::Strict:
        out.implied[i] = Verdict::Strict;
        break;
      case Rule::AxisCondition:
        out.implied[i] = axis_condition(body, s) ? Verdict::NonStrict : Verdict::Strict;
        break;
      case Rule::Silent:
        break;
    }
    if (out.implied[i] && *out.implied[i] != out.computed.directions[i].verdict) out.consistent = false;
  }

  const bool sl2_ii = out.sl2_type && (*out.sl2_type == SL2Tag::TypeIIa || *out.sl2_type == SL2Tag::TypeIIb);
  out.tension = sl2_ii && !out.consistent;
  if (out.tension) {
    out.note = "case 3 asserts strict, the support-function criterion gives nonstrict; see the oracle verdict";
  } else if (!out.consistent) {
    out.note = "case list and support-function criterion disagree";
  }
  return out;
}

}  // namespace abnorm
