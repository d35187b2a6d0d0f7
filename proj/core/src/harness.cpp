#include "ringlab/harness.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "ringlab/census.hpp"
#include "ringlab/construct.hpp"
#include "ringlab/decompose.hpp"
#include "ringlab/dsl.hpp"
#include "ringlab/error.hpp"
#include "ringlab/ideal.hpp"
#include "ringlab/numeric.hpp"
#include "ringlab/properties.hpp"

#ifndef RINGLAB_VERSION
#define RINGLAB_VERSION "0.0.0"
#endif

namespace ringlab {

namespace {

// Exhaustive pair checks run on rings up to this size; larger rings are skipped with a reason.
constexpr std::uint64_t kPairLimit = 256;
constexpr std::uint64_t kElementLimit = 4096;

const std::vector<std::string> kDefaultSpecs = {
    "Z2",      "Z3",      "Z4",      "Z6",     "Z7",     "Z8",     "Z9",     "Z12",      "GF(2^2)",  "GF(2^3)",
    "GF(3^2)", "Q(Z2, [0, 0, 1])",   "M2(Z2)", "M2(Z3)", "M2(Z4)", "T2(Z2)", "T2(Z4)",   "T3(Z2)",   "Z2[C2]",
    "Z2[C3]",  "Z2[S3]",  "Z3[Q8]",  "Z2[D4]", "Z3 x Z4", "Z12 x Z7", "ZZ",   "POLY(Z2)", "POLY(Z4)"};

struct RingSlot {
    const CorpusEntry* entry = nullptr;
    RingPtr ring;
};

struct Task {
    std::size_t suite = 0;
    std::size_t position = 0;
    CheckReport report;
    std::function<void(CheckReport&)> body;
};

using Generator = std::function<void(const RingSlot&, std::size_t, std::vector<Task>&)>;

void pass(CheckReport& r, std::string witness) {
    r.status = CheckStatus::Pass;
    r.witness = std::move(witness);
}

void fail_with(CheckReport& r, std::string counterexample, std::string reason) {
    r.status = CheckStatus::Fail;
    r.counterexample = std::move(counterexample);
    r.reason = std::move(reason);
}

void data(CheckReport& r, std::string note) {
    r.status = CheckStatus::Data;
    r.note = std::move(note);
}

void skip(CheckReport& r, std::string reason) {
    r.status = CheckStatus::Skip;
    r.reason = std::move(reason);
}

/// Adds a check; the body runs later, possibly on another thread.
void add(std::vector<Task>& out, const RingSlot& slot, std::size_t position, const std::string& id,
         const std::string& anchor, bool vacuity, std::function<void(CheckReport&)> body) {
    Task t;
    t.position = position;
    t.report.id = id;
    t.report.anchor = anchor;
    t.report.ring = slot.entry->spec;
    t.report.vacuity = vacuity;
    t.body = std::move(body);
    out.push_back(std::move(t));
}

/// Empty when the ring is finite and has at most limit elements.
std::string size_problem(const Ring& ring, std::uint64_t limit) {
    if (!ring.is_finite()) return "symbolic ring";
    if (ring.finite().size() > limit) return fmt::format("{} elements exceed the limit of {}", ring.finite().size(), limit);
    return "";
}

/// Adds the check, or a skip carrying the size problem.
void add_sized(std::vector<Task>& out, const RingSlot& slot, std::size_t position, std::uint64_t limit, const std::string& id,
               const std::string& anchor, bool vacuity, std::function<void(CheckReport&)> body) {
    std::string problem = size_problem(*slot.ring, limit);
    if (!problem.empty()) {
        add(out, slot, position, id, anchor, vacuity, [problem](CheckReport& r) { skip(r, problem); });
        return;
    }
    add(out, slot, position, id, anchor, vacuity, std::move(body));
}

std::string show(const Ring& ring, const Element& x) { return print(ring, x); }

bool layer_full(const FiniteRing& ring, const ElementClass& c, std::size_t j) {
    const auto& s = sumset_layers(ring, c);
    if (j >= s.layers.size()) j = s.cycle_start + (j - s.cycle_start) % (s.layers.size() - s.cycle_start);
    const auto& layer = s.layers[j];
    return std::all_of(layer.begin(), layer.end(), [](bool b) { return b; });
}

/// Least k with the k-th sumset layer of cls equal to the whole ring, if any layer is.
std::optional<std::size_t> full_layer(const FiniteRing& ring, const ElementClass& c) {
    const auto& s = sumset_layers(ring, c);
    for (std::size_t j = 0; j < s.layers.size(); ++j) {
        if (std::all_of(s.layers[j].begin(), s.layers[j].end(), [](bool b) { return b; })) return j + 1;
    }
    return std::nullopt;
}

bool relation_holds(const Ring& ring, const Element& x, const PowerRelation& w) { return ring.pow(x, w.high) == ring.pow(x, w.low); }

// NILLIFT -------------------------------------------------------------------------------------------------------

void nillift(const RingSlot& slot, std::size_t pos, std::vector<Task>& out) {
    const Ring& ring = *slot.ring;
    if (!ring.is_finite()) return;
    if (const auto* p = slot.entry->descriptor.get<desc::Product>()) {
        add_sized(out, slot, pos, kElementLimit, "nillift.product-witness",
                  "component witnesses (k,l), (m,n) combine to (s+t, t) with s = (k-l)(m-n), t = max(l,n)", false,
                  [&ring, p](CheckReport& r) {
                      RingPtr left = construct(*p->left, ring.finite().cap());
                      RingPtr right = construct(*p->right, ring.finite().cap());
                      const FiniteRing& a = left->finite();
                      const FiniteRing& b = right->finite();
                      const auto& ta = orbit_table(a);
                      const auto& tb = orbit_table(b);
                      std::uint64_t count = 0;
                      for (ElemId x = 0; x < a.size(); ++x) {
                          for (ElemId y = 0; y < b.size(); ++y) {
                              Coords c = a.element(x).coords();
                              Element ey = b.element(y);
                              c.insert(c.end(), ey.coords().begin(), ey.coords().end());
                              Element pair(ring.id(), c);
                              auto w = combine_product_witness(PowerRelation::from(ta[x]), PowerRelation::from(tb[y]));
                              if (!relation_holds(ring, pair, w)) {
                                  return fail_with(r, show(ring, pair), fmt::format("x^{} != x^{}", w.high, w.low));
                              }
                              ++count;
                          }
                      }
                      pass(r, fmt::format("{} pairs validated", count));
                  });
    }
    if (ring.characteristic() == 0) return;
    add_sized(out, slot, pos, kPairLimit, "nillift.frobenius-lift",
              "a relation modulo a nil ideal lifts to R after raising exponents by a power of p", false,
              [ptr = slot.ring](CheckReport& r) {
                  const FiniteRing& f = ptr->finite();
                  auto list = nil_ideals(ptr);
                  std::uint64_t triples = 0;
                  for (const auto& ideal : list.ideals) {
                      auto q = quotient(ideal);
                      for (ElemId a = 0; a < f.size(); ++a) {
                          Element x = f.element(a);
                          auto w = PowerRelation::from(orbit_witness(*q, q->element(q->project(a))));
                          auto lift = frobenius_lift(ptr, ideal, x, w);
                          if (!relation_holds(f, x, lift.relation)) {
                              return fail_with(r, show(f, x),
                                               fmt::format("lifted x^{} != x^{} over |I| = {}", lift.relation.high,
                                                           lift.relation.low, ideal.size()));
                          }
                          ++triples;
                      }
                  }
                  pass(r, fmt::format("{} (ideal, element) pairs over {} nil ideals{}", triples, list.ideals.size(),
                                      list.complete ? "" : " (partial ideal list)"));
              });
    add_sized(out, slot, pos, kPairLimit, "nillift.rank-plus-one",
              "R/I additively k-periodic for a nil ideal I gives R additively (k+1)-periodic", true,
              [ptr = slot.ring](CheckReport& r) {
                  const FiniteRing& f = ptr->finite();
                  auto list = nil_ideals(ptr);
                  auto ring_k = full_layer(f, ElementClass::periodic());
                  for (const auto& ideal : list.ideals) {
                      auto q = quotient(ideal);
                      auto quotient_k = full_layer(*q, ElementClass::periodic());
                      if (quotient_k && (!ring_k || *ring_k > *quotient_k + 1)) {
                          return fail_with(r, fmt::format("|I| = {}", ideal.size()), "rank bound violated");
                      }
                  }
                  pass(r, fmt::format("rank {} over {} nil ideals", ring_k.value_or(0), list.ideals.size()));
              });
}

// TRIANG --------------------------------------------------------------------------------------------------------

void triang(const RingSlot& slot, std::size_t pos, std::vector<Task>& out) {
    const auto& d = slot.entry->descriptor;
    if (!d.get<desc::Matrix>() && !d.get<desc::Triangular>()) return;
    const Ring& ring = *slot.ring;
    add_sized(out, slot, pos, kDefaultEnumerationCap, "triang.split",
              "a matrix is strictly upper plus strictly lower plus diagonal, at most 3 periodic summands", false,
              [&ring](CheckReport& r) {
                  const FiniteRing& f = ring.finite();
                  std::size_t most = 0;
                  for (ElemId x = 0; x < f.size(); ++x) {
                      auto cert = matrix_split(ring, f.element(x));
                      auto v = verify_certificate(ring, cert);
                      if (!v.ok) return fail_with(r, show(ring, f.element(x)), v.reason);
                      if (cert.summands.size() > 3) return fail_with(r, show(ring, f.element(x)), "more than 3 summands");
                      most = std::max(most, cert.summands.size());
                  }
                  pass(r, fmt::format("{} certificates, at most {} summands", f.size(), most));
              });
    add_sized(out, slot, pos, kDefaultEnumerationCap, "triang.periodic-equivalence",
              "for commutative R, matrix rings are additively periodic iff periodic iff R is periodic", true,
              [&ring](CheckReport& r) {
                  const FiniteRing& f = ring.finite();
                  orbit_table(f);
                  bool two = layer_full(f, ElementClass::periodic(), 1);
                  if (!two) return fail_with(r, "", "not additively 2-periodic");
                  pass(r, fmt::format("orbit witnesses for all {} elements", f.size()));
              });
}

// COMMUTE -------------------------------------------------------------------------------------------------------

void commute(const RingSlot& slot, std::size_t pos, std::vector<Task>& out) {
    const Ring& ring = *slot.ring;
    if (!ring.is_finite()) return;
    add_sized(out, slot, pos, kElementLimit, "commute.weak-split",
              "each periodic element is a commuting sum of a potent and a nilpotent element", false,
              [&ring](CheckReport& r) {
                  const FiniteRing& f = ring.finite();
                  for (ElemId x = 0; x < f.size(); ++x) {
                      auto cert = weak_split(ring, f.element(x));
                      auto v = verify_certificate(ring, cert);
                      if (!v.ok || !cert.commuting) return fail_with(r, show(ring, f.element(x)), v.ok ? "parts do not commute" : v.reason);
                  }
                  pass(r, fmt::format("{} verified splits", f.size()));
              });
    add_sized(out, slot, pos, kPairLimit, "commute.sum-periodic",
              "in positive characteristic a sum of commuting periodic elements is periodic", true,
              [&ring](CheckReport& r) {
                  const FiniteRing& f = ring.finite();
                  std::uint64_t pairs = 0;
                  for (ElemId u = 0; u < f.size(); ++u) {
                      for (ElemId v = u; v < f.size(); ++v) {
                          if (!f.commute(u, v)) continue;
                          Element s = f.element(f.add(u, v));
                          auto w = PowerRelation::from(orbit_witness(ring, s));
                          if (!relation_holds(ring, s, w)) return fail_with(r, show(ring, s), "orbit witness fails");
                          ++pairs;
                      }
                  }
                  pass(r, fmt::format("{} commuting pairs", pairs));
              });
    add_sized(out, slot, pos, kPairLimit, "commute.central-sum",
              "periodic u, v with u + v central satisfy uv = vu", false, [&ring](CheckReport& r) {
                  const FiniteRing& f = ring.finite();
                  std::vector<char> central(f.size(), 0);
                  for (ElemId c : center(f)) central[c] = 1;
                  std::uint64_t pairs = 0;
                  for (ElemId u = 0; u < f.size(); ++u) {
                      for (ElemId v = 0; v < f.size(); ++v) {
                          if (!central[f.add(u, v)]) continue;
                          if (!f.commute(u, v)) {
                              return fail_with(r, fmt::format("u = {}, v = {}", show(ring, f.element(u)), show(ring, f.element(v))),
                                               "uv != vu");
                          }
                          ++pairs;
                      }
                  }
                  pass(r, fmt::format("{} pairs with central sum", pairs));
              });
    if (ring.is_commutative()) {
        add_sized(out, slot, pos, kDefaultEnumerationCap, "commute.commutative-periodic",
                  "a commutative ring whose elements are sums of k commuting periodic elements is periodic", true,
                  [&ring](CheckReport& r) {
                      const FiniteRing& f = ring.finite();
                      auto k = full_layer(f, ElementClass::periodic());
                      if (!k) return fail_with(r, "", "no sumset layer covers the ring");
                      orbit_table(f);
                      pass(r, fmt::format("k = {}; orbit witnesses for all {} elements", *k, f.size()));
                  });
    }
}

// GROUPRING -----------------------------------------------------------------------------------------------------

void groupring(const RingSlot& slot, std::size_t pos, std::vector<Task>& out) {
    const auto* gr = slot.entry->descriptor.get<desc::GroupRing>();
    if (gr == nullptr) return;
    add_sized(out, slot, pos, kDefaultEnumerationCap, "groupring.augmentation-quotient",
              "RG modulo the augmentation ideal is isomorphic to R", false, [ptr = slot.ring](CheckReport& r) {
                  Augmentation aug = augmentation(ptr);
                  auto q = quotient(aug.kernel);
                  const FiniteRing& base = aug.coefficient_ring->finite();
                  if (q->size() != base.size()) {
                      return fail_with(r, "", fmt::format("|RG/w| = {} but |R| = {}", q->size(), base.size()));
                  }
                  std::vector<ElemId> phi(q->size());
                  std::vector<char> hit(base.size(), 0);
                  for (ElemId c = 0; c < q->size(); ++c) {
                      phi[c] = aug.map[q->representative(c)];
                      if (hit[phi[c]]) return fail_with(r, show(*q, q->element(c)), "induced map is not injective");
                      hit[phi[c]] = 1;
                  }
                  for (ElemId a = 0; a < q->size(); ++a) {
                      for (ElemId b = 0; b < q->size(); ++b) {
                          if (phi[q->add(a, b)] != base.add(phi[a], phi[b]) || phi[q->mul(a, b)] != base.mul(phi[a], phi[b])) {
                              return fail_with(r, fmt::format("{}, {}", show(*q, q->element(a)), show(*q, q->element(b))),
                                               "induced map is not a ring homomorphism");
                          }
                      }
                  }
                  pass(r, fmt::format("isomorphism onto {} elements; |w| = {}", base.size(), aug.kernel.size()));
              });
    auto table = gr->group.table();
    if (table->nilpotent() != true) {
        add(out, slot, pos, "groupring.nilpotent-equivalence",
            "for commutative R and nilpotent G: RG additively 2-periodic iff periodic iff R periodic and G locally finite",
            true, [name = table->name()](CheckReport& r) { skip(r, fmt::format("{} is not known to be nilpotent", name)); });
        return;
    }
    add_sized(out, slot, pos, kDefaultEnumerationCap, "groupring.nilpotent-equivalence",
              "for commutative R and nilpotent G: RG additively 2-periodic iff periodic iff R periodic and G locally finite",
              true, [ptr = slot.ring](CheckReport& r) {
                  const FiniteRing& f = ptr->finite();
                  bool two = layer_full(f, ElementClass::periodic(), 1);
                  orbit_table(f);
                  if (!two) return fail_with(r, "", "not additively 2-periodic");
                  pass(r, fmt::format("all three conditions hold on {} elements", f.size()));
              });
}

// TPP -----------------------------------------------------------------------------------------------------------

void tpp(const RingSlot& slot, std::size_t pos, std::vector<Task>& out) {
    const Ring& ring = *slot.ring;
    if (!ring.is_finite()) return;
    add_sized(out, slot, pos, kDefaultEnumerationCap, "tpp.subgroup", "torsion units form a subgroup of the units", true,
              [&ring](CheckReport& r) {
                  Flag f = has_tpp(ring);
                  if (!f.value) return fail_with(r, f.counterexample ? show(ring, *f.counterexample) : "", f.evidence);
                  pass(r, f.evidence);
              });
    std::uint64_t n = ring.characteristic();
    auto factors = factorize(static_cast<std::int64_t>(n));
    bool prime = factors.size() == 1 && factors.begin()->second == 1;
    bool prime_power = factors.size() == 1;
    const std::string step_anchor = "for torsion units a, b in characteristic p: c = a^-1 b has c^(p^m) = c, so a + b = a(1 + c) is torsion";
    if (!prime) {
        add(out, slot, pos, "tpp.constructive-step", step_anchor, false,
            [n](CheckReport& r) { skip(r, fmt::format("characteristic {} is not prime", n)); });
    } else {
        add_sized(out, slot, pos, kPairLimit, "tpp.constructive-step", step_anchor, false, [&ring](CheckReport& r) {
            const FiniteRing& f = ring.finite();
            std::map<TorsionSumStatus, std::uint64_t> counts;
            for (ElemId a : unit_ids(f)) {
                for (ElemId b : unit_ids(f)) {
                    auto res = torsion_sum_witness(ring, f.element(a), f.element(b));
                    ++counts[res.status];
                    if (res.status != TorsionSumStatus::Ok) continue;
                    Element sum = f.element(f.add(a, b));
                    if (!res.frobenius_identity || !res.order || ring.pow(sum, *res.order) != ring.one()) {
                        return fail_with(r, fmt::format("a = {}, b = {}", show(ring, f.element(a)), show(ring, f.element(b))),
                                         "constructed order does not verify");
                    }
                }
            }
            pass(r, fmt::format("verified orders for {} pairs", counts[TorsionSumStatus::Ok]));
            r.note = fmt::format("ok={}, NoFrobeniusFixpoint={}, NonUnitSum={}", counts[TorsionSumStatus::Ok],
                                 counts[TorsionSumStatus::NoFrobeniusFixpoint], counts[TorsionSumStatus::NonUnitSum]);
        });
    }
    if (!prime_power) return;
    std::int64_t p = factors.begin()->first;
    add_sized(out, slot, pos, kDefaultEnumerationCap, "tpp.reduction-mod-p",
              "pR is a nil ideal and R/pR inherits the torsion product property", false, [ptr = slot.ring, p](CheckReport& r) {
                  const FiniteRing& f = ptr->finite();
                  ElemId pid = f.id_of(f.from_integer(p));
                  auto ideal = ideal_closure(ptr, std::vector<ElemId>{pid});
                  if (!ideal.nil()) return fail_with(r, show(f, f.element(pid)), "pR is not nil");
                  auto q = quotient(ideal);
                  Flag t = has_tpp(*q);
                  if (!t.value) return fail_with(r, t.counterexample ? show(*q, *t.counterexample) : "", t.evidence);
                  pass(r, fmt::format("|pR| = {}, |R/pR| = {}", ideal.size(), q->size()));
              });
    add_sized(out, slot, pos, kDefaultEnumerationCap, "tpp.strongly-echo",
              "strongly t.p.p plus additively torsion in positive characteristic gives periodic", true,
              [ptr = slot.ring](CheckReport& r) {
                  const FiniteRing& f = ptr->finite();
                  StrongTpp s = has_strong_tpp(ptr);
                  auto k = full_layer(f, ElementClass::torsion_unit());
                  orbit_table(f);
                  pass(r, fmt::format("periodic on {} elements", f.size()));
                  r.note = fmt::format("strong_tpp={} over {} nil ideals{}, additively_torsion={}", s.flag.value, s.ideals,
                                       s.complete ? "" : " (partial)", k ? fmt::format("k={}", *k) : std::string("false"));
              });
}

// POLYREMARK ----------------------------------------------------------------------------------------------------

void polyremark(const RingSlot& slot, std::size_t pos, std::vector<Task>& out) {
    if (slot.ring->kind() != Ring::Kind::Polynomial) return;
    const Ring& ring = *slot.ring;
    add(out, slot, pos, "polyremark.t-not-additively-2-periodic", "Z_n[t] is not additively 2-periodic", false,
        [&ring](CheckReport& r) {
            Element t = parse_element(ring, "[0, 1]");
            auto d = poly_additive_decision(ring, t);
            if (d.decomposable) return fail_with(r, "[0, 1]", "t was reported as a sum of periodic elements");
            pass(r, fmt::format("t: obstruction at degree {}, coefficient {}, prime {}", d.obstruction->degree,
                                d.obstruction->coefficient, d.obstruction->prime));
        });
    add(out, slot, pos, "polyremark.torsion-units-not-periodic", "a torsion unit group does not force periodicity", false,
        [&ring](CheckReport& r) {
            Flag torsion = unit_group_torsion(ring);
            auto d = poly_periodicity(ring, parse_element(ring, "[0, 1]"));
            if (!torsion.value) return fail_with(r, "", "unit group not torsion");
            if (d.periodic) return fail_with(r, "[0, 1]", "t reported periodic");
            pass(r, "units torsion; t not periodic");
        });
}

// PROBLEMS ------------------------------------------------------------------------------------------------------

std::pair<std::uint64_t, std::uint64_t> coverage(const Ring& ring, const std::vector<ElementClass>& classes, bool commuting) {
    const FiniteRing& f = ring.finite();
    std::uint64_t hit = 0;
    for (ElemId x = 0; x < f.size(); ++x) {
        if (sum_search(ring, f.element(x), classes, commuting)) ++hit;
    }
    return {hit, f.size()};
}

void problems(const RingSlot& slot, std::size_t pos, std::vector<Task>& out) {
    const Ring& ring = *slot.ring;
    if (!ring.is_finite()) return;
    add_sized(out, slot, pos, kPairLimit, "problems.two-potents", "which rings have every element a sum of two potents",
              false, [&ring](CheckReport& r) {
                  auto [hit, n] = coverage(ring, {ElementClass::potent_any(), ElementClass::potent_any()}, false);
                  data(r, fmt::format("{}/{} elements are sums of two potents", hit, n));
              });
    add_sized(out, slot, pos, kPairLimit, "problems.potent3-potent4",
              "which elements are sums of a commuting 3-potent and 4-potent", false, [&ring](CheckReport& r) {
                  auto [hit, n] = coverage(ring, {ElementClass::potent(3), ElementClass::potent(4)}, true);
                  data(r, fmt::format("{}/{} elements", hit, n));
              });
}

Task potent_sweep() {
    Task t;
    t.report.id = "problems.potent3-potent4-sweep";
    t.report.anchor = "which elements are sums of a commuting 3-potent and 4-potent";
    t.report.ring = "Z2..Z30, M2(Z2)";
    t.body = [](CheckReport& r) {
        std::vector<std::string> parts;
        std::vector<std::string> specs;
        for (int n = 2; n <= 30; ++n) specs.push_back(fmt::format("Z{}", n));
        specs.emplace_back("M2(Z2)");
        for (const auto& spec : specs) {
            RingPtr ring = construct(parse_ring(spec));
            auto [hit, n] = coverage(*ring, {ElementClass::potent(3), ElementClass::potent(4)}, true);
            parts.push_back(fmt::format("{} {}/{}", spec, hit, n));
        }
        std::string note;
        for (std::size_t i = 0; i < parts.size(); ++i) note += (i ? "; " : "") + parts[i];
        data(r, note);
    };
    return t;
}

// FALSIFY -------------------------------------------------------------------------------------------------------

void falsify(const RingSlot& slot, std::size_t pos, std::vector<Task>& out) {
    const Ring& ring = *slot.ring;
    if (ring.kind() == Ring::Kind::Integers) {
        add(out, slot, pos, "falsify.uniform-k",
            "a commutative additively periodic ring is periodic, read without a uniform bound on summands", false,
            [ptr = slot.ring](CheckReport& r) {
                RingProfile p = profile(ptr);
                bool any_k = std::any_of(p.additively_k.begin(), p.additively_k.end(),
                                         [](const AdditiveFlag& a) { return a.cls == ElementClass::periodic() && a.flag.value; });
                data(r, fmt::format("commutative={}, additively_periodic={} (rank(n) = |n|), additively_k_periodic(k<=4)={}, "
                                    "periodic={} (counterexample {})",
                                    p.commutative, p.additively_periodic.value, any_k, p.periodic.value,
                                    show(*ptr, *p.periodic.counterexample)));
            });
        return;
    }
    if (!ring.is_finite()) return;
    std::uint64_t n = ring.characteristic();
    if (!is_prime(static_cast<std::int64_t>(n))) return;
    add_sized(out, slot, pos, kPairLimit, "falsify.tpp-lemma",
              "prime characteristic, t.p.p and additively torsion give a field", false, [&ring, n](CheckReport& r) {
                  const FiniteRing& f = ring.finite();
                  bool two_torsion = layer_full(f, ElementClass::torsion_unit(), 1);
                  bool t = has_tpp(ring).value;
                  bool field = is_field(f);
                  data(r, fmt::format("additively_2_torsion={}, tpp={}, characteristic={}, field={}", two_torsion, t, n, field));
              });
}

// EXPECT --------------------------------------------------------------------------------------------------------

std::optional<Flag> profile_flag(const RingProfile& p, const std::string& key) {
    static const std::map<std::string, Flag RingProfile::*> flags = {
        {"periodic", &RingProfile::periodic},         {"weakly_periodic", &RingProfile::weakly_periodic},
        {"additively_periodic", &RingProfile::additively_periodic}, {"has_tpp", &RingProfile::has_tpp},
        {"has_strong_tpp", &RingProfile::has_strong_tpp}, {"two_good", &RingProfile::two_good},
        {"unit_group_torsion", &RingProfile::unit_group_torsion}, {"field", &RingProfile::field}};
    auto it = flags.find(key);
    if (it == flags.end()) return std::nullopt;
    return p.*(it->second);
}

void expect(const RingSlot& slot, std::size_t pos, std::vector<Task>& out) {
    for (const auto& e : slot.entry->expectations) {
        add(out, slot, pos, "expect." + e.key, fmt::format("corpus expectation {} = {}", e.key, e.value), false,
            [ptr = slot.ring, e](CheckReport& r) {
                RingProfile p = profile(ptr);
                std::string actual;
                std::string counterexample;
                if (e.key == "commutative") {
                    actual = p.commutative ? "true" : "false";
                } else if (e.key == "size") {
                    actual = p.size ? std::to_string(*p.size) : "infinite";
                } else {
                    Flag f = *profile_flag(p, e.key);
                    actual = f.value ? "true" : "false";
                    if (f.counterexample) counterexample = show(*ptr, *f.counterexample);
                    if (f.value) r.witness = f.evidence;
                }
                if (actual != e.value) return fail_with(r, counterexample, fmt::format("expected {}, computed {}", e.value, actual));
                r.status = CheckStatus::Pass;
                if (r.witness.empty()) r.witness = actual;
            });
    }
}

const std::vector<std::pair<std::string, Generator>>& catalog() {
    static const std::vector<std::pair<std::string, Generator>> suites = {
        {"NILLIFT", nillift},   {"TRIANG", triang},     {"COMMUTE", commute}, {"GROUPRING", groupring},
        {"TPP", tpp},           {"POLYREMARK", polyremark}, {"PROBLEMS", problems}, {"FALSIFY", falsify},
        {"EXPECT", expect}};
    return suites;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool keep(const RingDescriptor& d, std::uint64_t max_size) {
    RingPtr r = construct(d, max_size);
    return !r->is_finite() || r->finite().size() <= max_size;
}

}  // namespace

std::string to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Skip: return "skip";
        case CheckStatus::Data: return "data";
    }
    return "?";
}

std::vector<CorpusEntry> default_corpus(std::uint64_t max_size) {
    std::vector<CorpusEntry> out;
    for (const auto& spec : kDefaultSpecs) {
        RingDescriptor d = parse_ring(spec);
        if (keep(d, max_size)) out.push_back({d, print(d), {}});
    }
    return out;
}

const std::vector<std::string>& expectation_keys() {
    static const std::vector<std::string> keys = {"periodic", "weakly_periodic", "additively_periodic", "has_tpp",
                                                  "has_strong_tpp", "two_good", "unit_group_torsion", "field",
                                                  "commutative", "size"};
    return keys;
}

std::vector<CorpusEntry> load_corpus(std::istream& in, std::uint64_t max_size) {
    std::vector<CorpusEntry> out;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        std::string body = trim(line);
        if (body.empty() || body[0] == '#') continue;
        std::string spec = body;
        std::string rest;
        if (auto bar = body.find('|'); bar != std::string::npos) {
            spec = trim(body.substr(0, bar));
            rest = trim(body.substr(bar + 1));
        }
        auto parsed = [&] {
            try {
                return parse_ring(spec);
            } catch (const ParseError& e) {
                throw ParseError(e.code(), e.position(), e.expected(), fmt::format("line {}: {}", number, e.what()));
            }
        };
        CorpusEntry entry{parsed(), "", {}};
        entry.spec = print(entry.descriptor);
        if (!rest.empty()) {
            if (rest.rfind("expect", 0) != 0) fail(ErrorCode::SemanticError, fmt::format("line {}: expected 'expect'", number));
            std::stringstream items(rest.substr(6));
            std::string item;
            while (std::getline(items, item, ',')) {
                item = trim(item);
                auto eq = item.find('=');
                if (eq == std::string::npos) fail(ErrorCode::SemanticError, fmt::format("line {}: '{}' is not key=value", number, item));
                Expectation x{trim(item.substr(0, eq)), trim(item.substr(eq + 1))};
                const auto& keys = expectation_keys();
                if (std::find(keys.begin(), keys.end(), x.key) == keys.end()) {
                    fail(ErrorCode::SemanticError, fmt::format("line {}: unknown expectation '{}'", number, x.key));
                }
                entry.expectations.push_back(std::move(x));
            }
        }
        if (keep(entry.descriptor, max_size)) out.push_back(std::move(entry));
    }
    return out;
}

const std::vector<std::string>& suite_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> v;
        for (const auto& [id, gen] : catalog()) v.push_back(id);
        return v;
    }();
    return ids;
}

std::vector<CheckReport> run_suites(const std::vector<CorpusEntry>& corpus, const std::vector<std::string>& suites,
                                    const HarnessConfig& config) {
    std::vector<std::size_t> chosen;
    for (const auto& s : suites) {
        std::string upper = s;
        std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
        const auto& ids = suite_ids();
        auto it = std::find(ids.begin(), ids.end(), upper);
        if (it == ids.end()) fail(ErrorCode::SemanticError, fmt::format("unknown suite '{}'", s));
        chosen.push_back(static_cast<std::size_t>(it - ids.begin()));
    }
    std::sort(chosen.begin(), chosen.end());
    chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());

    std::vector<RingSlot> slots;
    for (const auto& entry : corpus) slots.push_back({&entry, construct(entry.descriptor, config.max_size)});

    std::vector<Task> tasks;
    for (std::size_t s : chosen) {
        const auto& [id, gen] = catalog()[s];
        std::vector<Task> generated;
        for (std::size_t i = 0; i < slots.size(); ++i) gen(slots[i], i, generated);
        if (id == "PROBLEMS") {
            generated.push_back(potent_sweep());
            generated.back().position = slots.size();
        }
        for (auto& t : generated) {
            t.suite = s;
            t.report.suite = id;
        }
        std::stable_sort(generated.begin(), generated.end(), [](const Task& a, const Task& b) {
            return std::tie(a.position, a.report.id) < std::tie(b.position, b.report.id);
        });
        for (auto& t : generated) tasks.push_back(std::move(t));
    }

    unsigned threads = config.threads != 0 ? config.threads : std::max(1U, std::thread::hardware_concurrency());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            Task& t = tasks[i];
            auto start = std::chrono::steady_clock::now();
            try {
                t.body(t.report);
            } catch (const Error& e) {
                t.report = CheckReport{t.report.id, t.report.suite, t.report.anchor, t.report.ring, CheckStatus::Skip,
                                       e.what(), "", "", t.report.vacuity, "", 0};
            }
            t.report.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        }
    };
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < std::min<std::size_t>(threads, tasks.size()); ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    std::vector<CheckReport> out;
    out.reserve(tasks.size());
    for (auto& t : tasks) out.push_back(std::move(t.report));
    return out;
}

bool any_failed(const std::vector<CheckReport>& reports) {
    return std::any_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.status == CheckStatus::Fail; });
}

std::string render_text(const std::vector<CheckReport>& reports) {
    std::size_t id_w = 2, ring_w = 4;
    for (const auto& r : reports) {
        id_w = std::max(id_w, r.id.size());
        ring_w = std::max(ring_w, r.ring.size());
    }
    std::string out = fmt::format("{:<6} {:<{}} {:<{}} {}\n", "status", "id", id_w, "ring", ring_w, "detail");
    std::map<CheckStatus, std::size_t> counts;
    for (const auto& r : reports) {
        ++counts[r.status];
        std::string detail;
        switch (r.status) {
            case CheckStatus::Pass: detail = r.witness; break;
            case CheckStatus::Fail: detail = r.counterexample.empty() ? r.reason : r.counterexample + ": " + r.reason; break;
            case CheckStatus::Skip: detail = r.reason; break;
            case CheckStatus::Data: detail = r.note; break;
        }
        if (r.status == CheckStatus::Pass && !r.note.empty()) detail += " (" + r.note + ")";
        if (r.vacuity) detail += " [vacuous]";
        out += fmt::format("{:<6} {:<{}} {:<{}} {}\n", to_string(r.status), r.id, id_w, r.ring, ring_w, detail);
    }
    out += fmt::format("{} checks: {} pass, {} fail, {} skip, {} data\n", reports.size(), counts[CheckStatus::Pass],
                       counts[CheckStatus::Fail], counts[CheckStatus::Skip], counts[CheckStatus::Data]);
    return out;
}

std::string render_json(const std::vector<CheckReport>& reports, const HarnessConfig& config, bool with_durations) {
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["version"] = 1;
    doc["generated_by"] = std::string("ringlab ") + RINGLAB_VERSION;
    doc["max_size"] = config.max_size;
    doc["checks"] = ordered_json::array();
    for (const auto& r : reports) {
        ordered_json c;
        c["id"] = r.id;
        c["suite"] = r.suite;
        c["anchor"] = r.anchor;
        c["ring"] = r.ring;
        c["status"] = to_string(r.status);
        c["reason"] = r.reason;
        c["witness"] = r.witness;
        c["counterexample"] = r.counterexample;
        c["vacuity"] = r.vacuity;
        c["note"] = r.note;
        if (with_durations) c["millis"] = std::round(r.millis * 1000.0) / 1000.0;
        doc["checks"].push_back(std::move(c));
    }
    return doc.dump(2) + "\n";
}

}  // namespace ringlab
