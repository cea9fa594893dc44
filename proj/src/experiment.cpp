#include "sl/experiment.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sl/diagnostics.hpp"
#include "sl/errors.hpp"
#include "sl/models/boombust.hpp"
#include "sl/models/gk.hpp"
#include "sl/models/mixture.hpp"
#include "sl/models/stable.hpp"
#include "sl/models/supernova.hpp"
#include "sl/trace_io.hpp"

namespace sl {

namespace {
using nlohmann::json;

VectorXd to_vector(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty())
    throw config_error(field, "expected a non-empty array of numbers");
  VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number())
      throw config_error(field + "[" + std::to_string(i) + "]",
                         "expected a number");
    v(i) = j[i].get<double>();
  }
  return v;
}

template <typename T>
T get_required(const json& j, const std::string& field) {
  if (!j.contains(field)) throw config_error(field, "missing");
  try {
    return j.at(field).get<T>();
  } catch (const json::exception&) {
    throw config_error(field, "wrong type");
  }
}

PriorMarginal parse_marginal(const json& j, const std::string& path) {
  PriorMarginal m;
  const auto kind = get_required<std::string>(j, "kind");
  if (kind == "uniform") m.kind = PriorMarginal::Kind::uniform;
  else if (kind == "normal") m.kind = PriorMarginal::Kind::normal;
  else if (kind == "beta") m.kind = PriorMarginal::Kind::beta;
  else if (kind == "std_normal_transformed")
    m.kind = PriorMarginal::Kind::std_normal_transformed;
  else throw config_error(path + ".kind", "unknown kind '" + kind + "'");
  m.a = j.value("a", 0.0);
  m.b = j.value("b", 1.0);
  const auto tr = j.value("transform", std::string("identity"));
  if (tr == "identity") m.transform = PriorMarginal::Transform::identity;
  else if (tr == "log") m.transform = PriorMarginal::Transform::log_scale;
  else throw config_error(path + ".transform", "unknown transform '" + tr + "'");
  return m;
}
}  // namespace

PriorSpec default_prior(const std::string& model_id) {
  if (model_id == "gk") return gk_prior();
  if (model_id == "boombust") return boombust_prior();
  if (model_id == "mixture") return mixture_prior();
  if (model_id == "stable" || model_id == "stable_perturbed")
    return stable_prior();
  if (model_id == "supernova") return supernova_prior();
  throw config_error("model", "no documented prior for '" + model_id + "'");
}

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw config_error("<root>", std::string("invalid JSON: ") + e.what());
  }

  ExperimentConfig cfg;
  cfg.name = j.value("name", std::string("experiment"));
  cfg.model = get_required<std::string>(j, "model");
  cfg.seed = get_required<std::uint64_t>(j, "seed");
  cfg.replicates = j.value("replicates", 1);
  if (cfg.replicates < 1) throw config_error("replicates", ">= 1 required");

  auto model = make_model(cfg.model);  // validates the id
  const int d = model->param_dim();

  if (j.contains("observed_summary")) {
    cfg.observed_summary = to_vector(j.at("observed_summary"), "observed_summary");
    if (cfg.observed_summary->size() != model->summary_dim())
      throw config_error("observed_summary", "wrong dimension");
  } else {
    if (!j.contains("true_params"))
      throw config_error("true_params",
                         "missing (or provide observed_summary)");
    cfg.true_params = to_vector(j.at("true_params"), "true_params");
    if (cfg.true_params.size() != d)
      throw config_error("true_params", "wrong dimension");
  }

  if (j.contains("theta0_list")) {
    std::vector<VectorXd> starts;
    const auto& arr = j.at("theta0_list");
    if (!arr.is_array() || arr.empty())
      throw config_error("theta0_list", "expected an array of starts");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      VectorXd t = to_vector(arr[i], "theta0_list[" + std::to_string(i) + "]");
      if (t.size() != d)
        throw config_error("theta0_list[" + std::to_string(i) + "]",
                           "wrong dimension");
      starts.push_back(std::move(t));
    }
    cfg.theta0_list = std::move(starts);
    cfg.theta0 = cfg.theta0_list->front();
  } else {
    if (!j.contains("theta0")) throw config_error("theta0", "missing");
    cfg.theta0 = to_vector(j.at("theta0"), "theta0");
    if (cfg.theta0.size() != d) throw config_error("theta0", "wrong dimension");
  }

  if (!j.contains("schedule")) throw config_error("schedule", "missing");
  const auto& sch = j.at("schedule");
  cfg.schedule.burnin = get_required<int>(sch, "burnin");
  cfg.schedule.mcwm_in_burnin = sch.value("mcwm", true);
  cfg.schedule.t_asl = get_required<int>(sch, "t_asl");
  cfg.schedule.r_post = get_required<int>(sch, "r_post");
  cfg.schedule.m = get_required<int>(sch, "m");
  if (sch.contains("m_post") && !sch.at("m_post").is_null())
    cfg.schedule.m_post = sch.at("m_post").get<int>();
  if (cfg.schedule.burnin < 0 || cfg.schedule.t_asl < 0 ||
      cfg.schedule.r_post < 0)
    throw config_error("schedule", "negative stage length");
  if (cfg.schedule.m < 2) throw config_error("schedule.m", "M >= 2 required");

  if (!j.contains("proposal")) throw config_error("proposal", "missing");
  const auto& prop = j.at("proposal");
  if (!prop.contains("c_init_sd"))
    throw config_error("proposal.c_init_sd", "missing");
  cfg.c_init_sd = to_vector(prop.at("c_init_sd"), "proposal.c_init_sd");
  if (cfg.c_init_sd.size() != d)
    throw config_error("proposal.c_init_sd", "wrong dimension");
  cfg.haario_update_interval = prop.value("haario_interval", 30);
  const auto mode = prop.value("asl_mode", std::string("gaussian"));
  if (mode == "gaussian") cfg.asl_mode = GuidedMode::gaussian;
  else if (mode == "student") cfg.asl_mode = GuidedMode::student;
  else throw config_error("proposal.asl_mode", "unknown mode '" + mode + "'");
  if (prop.contains("student_nu") && !prop.at("student_nu").is_null())
    cfg.student_nu = prop.at("student_nu").get<double>();

  if (!j.contains("likelihood")) throw config_error("likelihood", "missing");
  const auto& lik = j.at("likelihood");
  const auto density = lik.value("density", std::string("unbiased"));
  if (density == "unbiased") cfg.density = DensityKind::unbiased;
  else if (density == "gaussian") cfg.density = DensityKind::plain_gaussian;
  else throw config_error("likelihood.density", "unknown density '" + density + "'");
  if (lik.contains("shrink_gamma") && !lik.at("shrink_gamma").is_null()) {
    cfg.shrink_gamma = lik.at("shrink_gamma").get<double>();
    if (!(*cfg.shrink_gamma > 0.0 && *cfg.shrink_gamma <= 1.0))
      throw config_error("likelihood.shrink_gamma", "outside (0,1]");
  }
  if (lik.contains("csl_blocks") && !lik.at("csl_blocks").is_null()) {
    cfg.csl_blocks = lik.at("csl_blocks").get<int>();
    if (*cfg.csl_blocks < 1)
      throw config_error("likelihood.csl_blocks", "G >= 1 required");
    if (!model->supports_variates())
      throw config_error("likelihood.csl_blocks",
                         "model '" + cfg.model + "' has no variate interface");
  }

  if (j.contains("prior")) {
    PriorSpec spec;
    const auto& arr = j.at("prior");
    for (std::size_t i = 0; i < arr.size(); ++i)
      spec.params.push_back(
          parse_marginal(arr[i], "prior[" + std::to_string(i) + "]"));
    if (spec.dim() != d) throw config_error("prior", "wrong dimension");
    cfg.prior = std::move(spec);
  }
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw config_error("<file>", "cannot open " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_experiment_config(buf.str());
}

VectorXd observed_summary(const Model& model, const ExperimentConfig& cfg) {
  if (cfg.observed_summary) return *cfg.observed_summary;
  Rng rng(mix_seed(cfg.seed, 0));
  return model.simulate_summary_stream(cfg.true_params, rng);
}

ChainConfig make_chain_config(const Model& model, const ExperimentConfig& cfg,
                              int replicate) {
  ChainConfig cc;
  cc.schedule = cfg.schedule;
  const VectorXd& start =
      cfg.theta0_list ? (*cfg.theta0_list)[std::size_t(replicate) %
                                           cfg.theta0_list->size()]
                      : cfg.theta0;
  cc.theta0_chain = model.to_chain(start);
  cc.c_init = cfg.c_init_sd.array().square().matrix().asDiagonal();
  cc.haario_update_interval = cfg.haario_update_interval;
  cc.asl_mode = cfg.asl_mode;
  cc.student_nu = cfg.student_nu;
  cc.density = cfg.density;
  cc.shrink_gamma = cfg.shrink_gamma;
  cc.csl_blocks = cfg.csl_blocks;
  return cc;
}

namespace {
void append_report(std::ostringstream& out, const ChainTrace& trace, int rep) {
  out << "[replicate " << rep << "]\n";
  out << "iterations = " << trace.size() << "\n";
  const int post = int(trace.size());
  MatrixXd draws = natural_draws(trace);
  // post-burnin rows only
  int first_post = 0;
  while (first_post < post && trace.stage[first_post] == Stage::burnin)
    ++first_post;
  if (post - first_post >= 100) {
    const MatrixXd tail = draws.bottomRows(post - first_post);
    const EssResult ess = ess_min(tail);
    out << "min_ess = " << ess.min_ess << "\n";
    for (Eigen::Index jcol = 0; jcol < tail.cols(); ++jcol) {
      const auto [lo, hi] = hpd_interval(tail.col(jcol));
      out << "theta_" << jcol << "_mean = " << tail.col(jcol).mean() << "\n";
      out << "theta_" << jcol << "_hpd95 = (" << lo << ", " << hi << ")\n";
    }
  }
  for (Stage st : {Stage::burnin, Stage::asl, Stage::adaptive}) {
    bool any = false;
    for (std::size_t i = 0; i < trace.size() && !any; ++i)
      any = trace.stage[i] == st;
    if (any)
      out << "acceptance_" << stage_name(st) << " = "
          << acceptance_rate(trace, st) << "\n";
  }
  out << "\n";
}
}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const std::string& out_dir, int scale) {
  if (scale < 1) throw config_error("scale", ">= 1 required");
  auto model = make_model(cfg.model);
  const PriorSpec prior = cfg.prior ? *cfg.prior : default_prior(cfg.model);
  const VectorXd s_obs = observed_summary(*model, cfg);

  ExperimentResult result;
  std::ostringstream report;
  report << "experiment = " << cfg.name << "\n";
  report << "model = " << cfg.model << "\n";
  report << "seed = " << cfg.seed << "\n\n";

  for (int rep = 0; rep < cfg.replicates; ++rep) {
    ChainConfig cc = make_chain_config(*model, cfg, rep);
    if (scale > 1) {
      cc.schedule.burnin = std::max(cc.schedule.burnin / scale,
                                    cc.schedule.burnin > 0 ? 2 : 0);
      cc.schedule.t_asl /= scale;
      cc.schedule.r_post /= scale;
    }
    ChainTrace trace =
        run_chain(*model, s_obs, prior, cc, mix_seed(cfg.seed, rep + 1));
    append_report(report, trace, rep);
    result.traces.push_back(std::move(trace));
  }
  result.report = report.str();

  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    for (std::size_t i = 0; i < result.traces.size(); ++i)
      write_trace_file(out_dir + "/trace_" + std::to_string(i) + ".csv",
                       result.traces[i]);
    std::ofstream rf(out_dir + "/report.txt");
    rf << result.report;
  }
  return result;
}

}  // namespace sl
