#include "ordflow/logic/classify.hpp"

#include <algorithm>

namespace ordflow::logic {

std::string to_string(const ClassTag& tag) {
  switch (tag.kind) {
    case ClassTag::Kind::qf: return "QF";
    case ClassTag::Kind::forall1: return "Forall1";
    case ClassTag::Kind::exists1: return "Exists1";
    case ClassTag::Kind::sigma_hat: return "SigmaHat(" + std::to_string(tag.k) + ")";
    case ClassTag::Kind::pi_hat: return "PiHat(" + std::to_string(tag.k) + ")";
  }
  return "?";
}

bool ClassInfo::contains(const ClassTag& tag) const {
  switch (tag.kind) {
    case ClassTag::Kind::qf: return qf;
    case ClassTag::Kind::forall1: return forall1;
    case ClassTag::Kind::exists1: return exists1;
    case ClassTag::Kind::sigma_hat: return sigma && *sigma <= tag.k;
    case ClassTag::Kind::pi_hat: return pi && *pi <= tag.k;
  }
  return false;
}

std::vector<ClassTag> ClassInfo::tags() const {
  std::vector<ClassTag> out;
  if (qf) out.push_back(ClassTag::QF());
  if (forall1) out.push_back(ClassTag::Forall1());
  if (exists1) out.push_back(ClassTag::Exists1());
  if (sigma) out.push_back(ClassTag::SigmaHat(*sigma));
  if (pi) out.push_back(ClassTag::PiHat(*pi));
  return out;
}

namespace {

std::optional<unsigned> join(std::optional<unsigned> a, std::optional<unsigned> b) {
  if (!a || !b) return std::nullopt;
  return std::max(*a, *b);
}

}  // namespace

// Levels follow the prenex-block reading: quantifier-free formulas sit at
// level 0 of both hierarchies, a bounded existential over a Pi-level-k body
// (or over a Sigma-level-k body, k >= 1) is Sigma-level k+1 (resp. k), and
// every Sigma-level-k formula is also Pi-level k+1. Universal dually.
ClassInfo classify(const Formula& f) {
  ClassInfo c;
  switch (f.kind()) {
    case FKind::eq:
    case FKind::le:
    case FKind::top:
    case FKind::bottom: return c;
    case FKind::conj:
    case FKind::disj: {
      for (const Formula& p : f.parts()) {
        ClassInfo q = classify(p);
        c.qf = c.qf && q.qf;
        c.forall1 = c.forall1 && q.forall1;
        c.exists1 = c.exists1 && q.exists1;
        c.sigma = join(c.sigma, q.sigma);
        c.pi = join(c.pi, q.pi);
      }
      return c;
    }
    default: break;
  }
  ClassInfo b = classify(f.body());
  c.qf = false;
  const bool universal = f.kind() == FKind::forall || f.kind() == FKind::bforall;
  c.forall1 = universal && b.forall1;
  c.exists1 = !universal && b.exists1;
  if (f.kind() == FKind::forall || f.kind() == FKind::exists || !b.sigma || !b.pi) {
    c.sigma = c.pi = std::nullopt;
    return c;
  }
  if (universal) {
    c.pi = std::min(std::max(*b.pi, 1u), *b.sigma + 1);
    c.sigma = *c.pi + 1;
  } else {
    c.sigma = std::min(std::max(*b.sigma, 1u), *b.pi + 1);
    c.pi = *c.sigma + 1;
  }
  return c;
}

}  // namespace ordflow::logic
