#include <mutex>

#include "limitlab/adversaries.hpp"
#include "limitlab/combinators.hpp"
#include "limitlab/learners.hpp"
#include "limitlab/target.hpp"

namespace limitlab {

std::vector<BenchmarkClass> benchmark_classes() {
  std::vector<BenchmarkClass> classes;
  classes.push_back(gold_class());
  classes.push_back(cofinite_class());
  classes.push_back(evenodd_class());
  classes.push_back(propsep_class());
  classes.push_back(infinite_sampled_class());
  // Level sets of the staged diagonalization against the range learner; a
  // modest default depth keeps the catalog cheap to build.
  static LevelAssignment assignment = separation_levels(2, range_learner(), 96, 0);
  classes.push_back(separation_class(assignment));
  return classes;
}

namespace {

Learner inner_from_params(const nlohmann::json& params) {
  if (!params.contains("inner")) throw Error("wrapper learner needs params.inner");
  const auto& inner = params.at("inner");
  std::string name = inner.at("name").get<std::string>();
  nlohmann::json inner_params = inner.contains("params") ? inner.at("params") : nlohmann::json{};
  return make_learner(name, inner_params);
}

std::once_flag builtin_flag;

void do_register() {
  register_learner("tail_union", [](const nlohmann::json&) { return tail_union_learner(); });
  register_learner("range", [](const nlohmann::json&) { return range_learner(); });
  register_learner("cofinite", [](const nlohmann::json&) { return cofinite_learner(); });
  register_learner("propsep", [](const nlohmann::json&) { return propsep_learner(); });
  register_learner("missing_point", [](const nlohmann::json&) { return missing_point_learner(); });
  register_learner("once_correct_tail",
                   [](const nlohmann::json&) { return once_correct_tail_learner(); });
  register_learner("inf_often_tail",
                   [](const nlohmann::json&) { return inf_often_tail_learner(); });
  register_learner("vacstar_wpart_tail",
                   [](const nlohmann::json&) { return vacstar_wpart_tail_learner(); });
  register_learner("consv_tail", [](const nlohmann::json&) { return consv_tail_learner(); });

  register_learner("superset_approx", [](const nlohmann::json& params) {
    if (!params.contains("W")) throw Error("superset_approx needs params.W (code string)");
    return superset_approx_learner(HypCode::parse(params.at("W").get<std::string>()));
  });
  register_learner("urec_cons_part", [](const nlohmann::json& params) {
    if (!params.contains("family")) throw Error("urec_cons_part needs params.family");
    std::string fam = params.at("family").get<std::string>();
    if (!Registry::global().has_family(fam)) {
      // The class builders register the shipped families.
      gold_class();
      cofinite_class();
      evenodd_class();
      propsep_class();
      finite_sets_class();
    }
    return urec_cons_part_learner(fam);
  });
  register_learner("bcsw", [](const nlohmann::json& params) {
    return bcstar_to_weakapprox(inner_from_params(params));
  });
  register_learner("finapprox_part", [](const nlohmann::json& params) {
    return finapprox_part_wrap(inner_from_params(params));
  });
  register_learner("finapprox_consv_part", [](const nlohmann::json& params) {
    return finapprox_consv_part_wrap(inner_from_params(params));
  });
  register_learner("bcn_part", [](const nlohmann::json& params) {
    Nat n = params.contains("n") ? params.at("n").get<Nat>() : 1;
    return bcn_part(inner_from_params(params), n);
  });
  register_learner("bcstar_part_once_correct", [](const nlohmann::json& params) {
    return bcstar_part_once_correct(inner_from_params(params));
  });
  register_learner("bcstar_part_inf_often", [](const nlohmann::json& params) {
    return bcstar_part_inf_often(inner_from_params(params));
  });
  register_learner("consv_to_approxpart_bcstar", [](const nlohmann::json& params) {
    return consv_to_approxpart_bcstar(inner_from_params(params));
  });
  register_learner("vacstar_wpart_to_vac", [](const nlohmann::json& params) {
    return vacstar_wpart_to_vac(inner_from_params(params));
  });
  register_learner("padding_normalize", [](const nlohmann::json& params) {
    return padding_normalize(inner_from_params(params));
  });
}

}  // namespace

void register_builtin_learners() { std::call_once(builtin_flag, do_register); }

}  // namespace limitlab
