#include "sl/model.hpp"

#include <vector>

#include "sl/errors.hpp"
#include "sl/models/boombust.hpp"
#include "sl/models/gk.hpp"
#include "sl/models/mixture.hpp"
#include "sl/models/stable.hpp"
#include "sl/models/supernova.hpp"

namespace sl {

VectorXd Model::simulate_summary(const VectorXd&, std::span<const double>,
                                 std::span<const double>) const {
  throw invalid_state("model '" + id() + "' has no variate interface");
}

VectorXd Model::simulate_summary_stream(const VectorXd& theta_natural,
                                        Rng& rng) const {
  if (!supports_variates())
    throw invalid_state("model '" + id() + "' must override the stream path");
  std::vector<double> normals(normals_per_sim()), uniforms(uniforms_per_sim());
  fill_normals(rng, normals);
  fill_uniforms(rng, uniforms);
  return simulate_summary(theta_natural, normals, uniforms);
}

std::unique_ptr<Model> make_model(const std::string& id) {
  if (id == "gk") return std::make_unique<GkModel>();
  if (id == "boombust") return std::make_unique<BoomBustModel>();
  if (id == "mixture") return std::make_unique<MixtureModel>();
  if (id == "stable") return std::make_unique<StableModel>(false);
  if (id == "stable_perturbed") return std::make_unique<StableModel>(true);
  if (id == "supernova") return std::make_unique<SupernovaModel>();
  throw config_error("model", "unknown model id '" + id + "'");
}

std::vector<std::string> model_ids() {
  return {"gk", "boombust", "mixture", "stable", "stable_perturbed",
          "supernova"};
}

}  // namespace sl
