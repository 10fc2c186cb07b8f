#include "unruh/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "unruh/channel.hpp"
#include "unruh/dilation.hpp"
#include "unruh/random_states.hpp"
#include "unruh/resource.hpp"

namespace unruh {

using nlohmann::json;

namespace {

PropertyReport oracle_report(const ChannelSpec& spec, int n, std::uint64_t seed) {
  PropertyReport rep{"oracle_equivalence", n, 0.0, 1e-8, true, seed, true, ""};
  Rng rng(seed);
  for (int s = 0; s < n; ++s) {
    rep.worst_violation = std::max(rep.worst_violation, oracle_compare(random_state(spec.input_signature(), rng), spec));
  }
  rep.finalize();
  return rep;
}

}  // namespace

std::vector<PropertySuite> run_verify(const VerifyConfig& cfg) {
  const int n = static_cast<int>(cfg.dims.size());
  std::vector<int> acc = cfg.accelerated.empty() ? std::vector<int>{n - 1} : cfg.accelerated;
  std::sort(acc.begin(), acc.end());
  const ChannelSpec spec =
      ChannelSpec::certified(cfg.dims, acc, std::vector<double>(acc.size(), cfg.r), cfg.epsilon);
  const DimSignature in_sig = spec.input_signature();
  const DimSignature out_sig = spec.output_signature();
  const int ns = cfg.samples;
  std::uint64_t seed = cfg.seed;

  std::vector<PropertySuite> suites;

  KrausSet ks = kraus_multiparty(spec);
  if (cfg.inject_fault) ks = ks.without_operator(*cfg.inject_fault);
  PropertySuite cptp = verify_cptp(ks, ns, seed++);
  cptp.name = "cptp";
  suites.push_back(std::move(cptp));

  suites.push_back({"oracle", {oracle_report(spec, std::min(ns, 20), seed++)}});

  const auto inc = FreeStatePredicate::incoherent();
  PropertySuite free_sets{"free_sets", {nrng_check(spec, inc, ns, seed++), geometry_check(spec, inc, ns, seed++)}};
  std::optional<FreeStatePredicate> ppt;
  if (n >= 2) {
    ppt = FreeStatePredicate::ppt(acc.size() < static_cast<std::size_t>(n) ? acc : std::vector<int>{n - 1});
    free_sets.checks.push_back(nrng_check(spec, *ppt, ns, seed++));
    free_sets.checks.push_back(geometry_check(spec, *ppt, ns, seed++));
  }
  suites.push_back(std::move(free_sets));

  PropertySuite t2 = theorem2_check(spec, inc, ns, seed++);
  t2.name = "theorem2";
  suites.push_back(std::move(t2));

  PropertySuite comp{"composition", {}};
  const auto dephase_in = register_free_operation(FreeOpKind::FullDephasing, in_sig, inc, seed++);
  const auto perm_in = register_free_operation(FreeOpKind::Permutation, in_sig, inc, seed++);
  const auto dephase_out = register_free_operation(FreeOpKind::FullDephasing, out_sig, inc, seed++);
  comp.checks.push_back(composition_check(spec, perm_in, CompositionOrder::Pre, inc, ns, seed++));
  comp.checks.push_back(composition_check(spec, dephase_out, CompositionOrder::Post, inc, ns, seed++));
  for (double p : {0.0, 0.5, 1.0}) comp.checks.push_back(convex_mixture_check(spec, dephase_in, p, inc, ns, seed++));
  // A: one extra qubit with a free operation; B: a single accelerated qubit.
  const ChannelSpec spec_b = ChannelSpec::certified({2}, {0}, std::vector<double>{cfg.r}, cfg.epsilon);
  const auto dephase_a = register_free_operation(FreeOpKind::FullDephasing, DimSignature{2}, inc, seed++);
  comp.checks.push_back(tensor_composition_check(dephase_a, spec_b, inc, ns, seed++));
  if (ppt) {
    const auto local_in = register_free_operation(FreeOpKind::LocalFreeOp, in_sig, *ppt, seed++);
    comp.checks.push_back(composition_check(spec, local_in, CompositionOrder::Pre, *ppt, ns, seed++));
    const auto local_a = register_free_operation(FreeOpKind::LocalFreeOp, DimSignature{2}, FreeStatePredicate::ppt({1}),
                                                 seed++);
    comp.checks.push_back(tensor_composition_check(local_a, spec_b, FreeStatePredicate::ppt({1}), ns, seed++));
  }
  suites.push_back(std::move(comp));

  PropertySuite mono{"monotonicity", {}};
  mono.checks.push_back(monotonicity_check(spec, "l1_coherence", std::nullopt, ns, seed++));
  mono.checks.push_back(monotonicity_check(spec, "relative_entropy_coherence", dephase_in, ns, seed++));
  if (n >= 2 && acc.size() < static_cast<std::size_t>(n)) {
    mono.checks.push_back(monotonicity_check(spec, "negativity", std::nullopt, ns, seed++));
  }
  mono.checks.push_back(monotonicity_check(spec_b, "robustness_coherence_qubit", std::nullopt, std::min(ns, 30), seed++));
  for (const char* d : {"trace", "bures", "relative-entropy", "hilbert-schmidt"}) {
    mono.checks.push_back(contraction_check(spec, d, ns, seed++));
  }
  suites.push_back(std::move(mono));
  return suites;
}

bool all_pass(const std::vector<PropertySuite>& suites) {
  return std::all_of(suites.begin(), suites.end(), [](const PropertySuite& s) { return s.pass(); });
}

json to_json(const PropertyReport& rep) {
  const double w = rep.worst_violation;
  return json{{"property", rep.property},
              {"samples", rep.samples},
              {"worst_violation", std::isfinite(w) ? json(w) : json(nullptr)},
              {"tolerance", rep.tolerance},
              {"pass", rep.pass},
              {"assertable", rep.assertable},
              {"seed", rep.seed},
              {"note", rep.note}};
}

json to_json(const std::vector<PropertySuite>& suites) {
  json out = json::array();
  for (const auto& s : suites) {
    json checks = json::array();
    for (const auto& c : s.checks) checks.push_back(to_json(c));
    out.push_back({{"suite", s.name}, {"pass", s.pass()}, {"checks", std::move(checks)}});
  }
  return out;
}

}  // namespace unruh
