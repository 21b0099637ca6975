// framescope: decide, certify, and falsify phase-retrieval properties of
// finite frames and projection systems.
//
// Commands: generate | analyze | falsify | recover | identities.
// Exit codes: 0 affirmative/success, 1 negative/none-found, 2 usage or data
// error.  All randomness is seeded (--seed, default 0); reports are
// byte-identical across runs and independent of FRAME_SCOPE_THREADS.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "framescope/core.hpp"
#include "framescope/io.hpp"
#include "framescope/oracle.hpp"
#include "framescope/projections.hpp"
#include "framescope/rng.hpp"
#include "framescope/spark.hpp"
#include "framescope/verdicts.hpp"
#include "framescope/weak.hpp"

namespace {

using framescope::Certificate;
using framescope::Complex;
using framescope::ComplementReport;
using framescope::DeficientDirection;
using framescope::Field;
using framescope::Frame;
using framescope::InputObject;
using framescope::Measurements;
using framescope::MeasurementEqualPair;
using framescope::ProjectionSystem;
using framescope::Rng;
using framescope::SubsetWitness;

constexpr int kSchemaVersion = 1;

void emit(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

nlohmann::json witness_json(const SubsetWitness& w) {
  return framescope::to_json(Certificate(w), Field::Real)["payload"];
}

nlohmann::json frame_digest(const Frame& frame) {
  nlohmann::json d;
  d["kind"] = "frame";
  d["field"] = framescope::field_name(frame.field);
  d["dim"] = frame.dim;
  d["n"] = frame.n();
  d["zero_vector_indices"] = frame.zero_vector_indices();
  return d;
}

nlohmann::json system_digest(const ProjectionSystem& system) {
  nlohmann::json d;
  d["kind"] = "projection_system";
  d["field"] = framescope::field_name(system.field);
  d["dim"] = system.dim;
  d["count"] = system.count();
  std::vector<int> dims;
  for (const auto& b : system.subspaces) {
    dims.push_back(static_cast<int>(b.cols()));
  }
  d["subspace_dims"] = dims;
  return d;
}

nlohmann::json bounds_json(int m, Field field) {
  const framescope::KnownBounds b = framescope::known_bounds(m, field);
  nlohmann::json out;
  out["lower"] = b.lower;
  out["generic_sufficient"] = b.generic_sufficient;
  out["note"] = b.note;
  return out;
}

struct GenerateArgs {
  std::string kind;
  int m = 0;
  int n = -1;
  std::vector<int> dims;
  std::string field = "real";
  std::uint64_t seed = 0;
  std::string output;
};

int run_generate(const GenerateArgs& a) {
  nlohmann::json obj;
  nlohmann::json digest;
  if (a.kind == "gaussian-real" || a.kind == "gaussian-complex") {
    if (a.n < 1) throw framescope::InputError("-n is required and must be >= 1");
    if (!a.dims.empty()) {
      throw framescope::InputError("--dims only applies to kind projections");
    }
    const Field field =
        a.kind == "gaussian-real" ? Field::Real : Field::Complex;
    Rng rng(a.seed);
    std::vector<Eigen::VectorXcd> vectors;
    for (int i = 0; i < a.n; ++i) {
      vectors.push_back(field == Field::Real
                            ? rng.gaussian_vec(a.m).cast<Complex>().eval()
                            : rng.cgaussian_vec(a.m));
    }
    const Frame frame(field, a.m, std::move(vectors));
    obj = framescope::to_json(frame);
    digest = frame_digest(frame);
  } else if (a.kind == "weak-pr") {
    if (a.n >= 0) throw framescope::InputError("weak-pr does not take -n");
    if (!a.dims.empty()) {
      throw framescope::InputError("--dims only applies to kind projections");
    }
    const Frame frame = framescope::weak_pr_frame(a.m);
    obj = framescope::to_json(frame);
    digest = frame_digest(frame);
  } else if (a.kind == "projections") {
    if (a.dims.empty()) {
      throw framescope::InputError("--dims is required for kind projections");
    }
    if (a.n >= 0) throw framescope::InputError("projections does not take -n");
    const Field field = a.field == "complex" ? Field::Complex : Field::Real;
    Rng rng(a.seed);
    std::vector<Eigen::MatrixXcd> subspaces;
    for (int d : a.dims) {
      if (d < 1 || d > a.m) {
        throw framescope::InputError("subspace dimension out of range");
      }
      subspaces.push_back(framescope::haar_orthonormal(rng, a.m, d, field));
    }
    const ProjectionSystem system(field, a.m, std::move(subspaces));
    obj = framescope::to_json(system);
    digest = system_digest(system);
  } else {
    throw framescope::InputError("unknown kind: " + a.kind);
  }

  if (a.output.empty()) {
    emit(obj);
    return 0;
  }
  framescope::save_json_file(a.output, obj);
  nlohmann::json confirm;
  confirm["schema_version"] = kSchemaVersion;
  confirm["command"] = "generate";
  confirm["kind"] = a.kind;
  confirm["path"] = a.output;
  confirm["seed"] = a.seed;
  confirm["input"] = digest;
  emit(confirm);
  return 0;
}

struct AnalyzeArgs {
  std::string input;
  int trials = 1000;
  int restarts = 200;
  int resamples = 50;
  int weak_trials = 200;
  std::uint64_t seed = 0;
};

// Real frames past the exhaustive cap get a sampling scan instead; the
// resulting verdict is labeled as evidence, never proof.
void analyze_real_frame(const Frame& frame, const AnalyzeArgs& a,
                        nlohmann::json& report, bool& affirmative) {
  if (frame.n() <= framescope::kMaxExhaustiveN) {
    const ComplementReport cp = framescope::has_complement_property(frame);
    nlohmann::json cpj;
    cpj["holds"] = cp.holds;
    if (cp.witness) cpj["witness"] = witness_json(*cp.witness);
    report["complement_property"] = cpj;

    const framescope::RetrievalVerdict v =
        framescope::real_verdict(frame, a.weak_trials, a.seed);
    nlohmann::json vj;
    vj["property"] = framescope::retrieval_property_name(v.property);
    vj["method"] = v.method;
    if (v.certificate) {
      vj["certificate"] = framescope::to_json(*v.certificate, frame.field);
    }
    report["verdict"] = vj;
    affirmative = v.property != framescope::RetrievalProperty::None;
    return;
  }

  const auto scan = framescope::mc_complement_scan(frame, a.trials, a.seed);
  nlohmann::json cpj;
  cpj["holds"] = nullptr;
  cpj["advisory"] = "exhaustive check infeasible (n > 30); sampled scan only";
  cpj["scan_samples"] = a.trials;
  if (scan) cpj["violation"] = witness_json(*scan);
  report["complement_property"] = cpj;

  nlohmann::json vj;
  if (scan) {
    vj["property"] =
        framescope::retrieval_property_name(framescope::RetrievalProperty::None);
    vj["method"] = "sampled subset scan: complement-property violation found";
    vj["certificate"] = framescope::to_json(Certificate(*scan), frame.field);
    affirmative = false;
  } else {
    vj["property"] = framescope::retrieval_property_name(
        framescope::RetrievalProperty::PhaselessReconstruction);
    vj["method"] = "sampled subset scan: no violation found (evidence only)";
    affirmative = true;
  }
  report["verdict"] = vj;
}

void analyze_complex_frame(const Frame& frame, const AnalyzeArgs& a,
                           nlohmann::json& report, bool& affirmative) {
  const framescope::InjectivityReport inj =
      framescope::complex_injectivity_check(frame, a.trials, a.seed);
  nlohmann::json ij;
  ij["no_violation"] = inj.no_violation;
  ij["trials"] = inj.trials;
  ij["required_dim"] = inj.required_dim;
  ij["min_dim"] = inj.min_dim;
  ij["max_dim"] = inj.max_dim;
  report["injectivity"] = ij;

  const auto hit = framescope::complex_falsifier(frame, a.restarts, a.seed);
  nlohmann::json fj;
  fj["found"] = hit.has_value();
  fj["restarts"] = a.restarts;
  if (hit) fj["residual"] = hit->residual;
  report["falsifier"] = fj;

  nlohmann::json vj;
  if (hit) {
    DeficientDirection dir{hit->u, framescope::s_u_dimension(frame, hit->u)};
    vj["property"] =
        framescope::retrieval_property_name(framescope::RetrievalProperty::None);
    vj["method"] = "deficient-direction search";
    vj["certificate"] = framescope::to_json(Certificate(dir), frame.field);
    affirmative = false;
  } else if (!inj.no_violation) {
    DeficientDirection dir{inj.worst_u, inj.min_dim};
    vj["property"] =
        framescope::retrieval_property_name(framescope::RetrievalProperty::None);
    vj["method"] = "sampled direction with deficient rank";
    vj["certificate"] = framescope::to_json(Certificate(dir), frame.field);
    affirmative = false;
  } else {
    vj["property"] = framescope::retrieval_property_name(
        framescope::RetrievalProperty::PhaselessReconstruction);
    vj["method"] = "Monte-Carlo injectivity check, no violation found "
                   "(evidence, not proof)";
    affirmative = true;
  }
  report["verdict"] = vj;
}

void analyze_system(const ProjectionSystem& system, const AnalyzeArgs& a,
                    nlohmann::json& report, bool& affirmative) {
  const framescope::PooledFrame pooled = framescope::pool_bases(system);
  report["pooled_n"] = pooled.frame.n();

  nlohmann::json nj;
  bool necessary_holds = false;
  if (pooled.frame.n() <= framescope::kMaxExhaustiveN) {
    const ComplementReport cp = framescope::projections_necessary_check(system);
    necessary_holds = cp.holds;
    nj["holds"] = cp.holds;
    if (cp.witness) nj["witness"] = witness_json(*cp.witness);
  } else {
    const auto scan =
        framescope::mc_complement_scan(pooled.frame, a.trials, a.seed);
    necessary_holds = !scan.has_value();
    nj["holds"] = nullptr;
    nj["advisory"] =
        "exhaustive check infeasible (pooled n > 30); sampled scan only";
    nj["scan_samples"] = a.trials;
    if (scan) nj["violation"] = witness_json(*scan);
  }
  report["necessary_check"] = nj;

  nlohmann::json sj;
  if (system.field == Field::Real &&
      pooled.frame.n() <= framescope::kMaxExhaustiveN) {
    const bool stable =
        framescope::resampled_verdict_stability(system, a.resamples, a.seed);
    sj["stable"] = stable;
    sj["resamples"] = a.resamples;
    affirmative = necessary_holds && stable;
  } else {
    sj["stable"] = nullptr;
    sj["note"] = "stability resampling runs on real systems within the "
                 "exhaustive cap";
    affirmative = necessary_holds;
  }
  report["stability"] = sj;
}

int run_analyze(const AnalyzeArgs& a) {
  const auto start = std::chrono::steady_clock::now();
  const InputObject input = framescope::load_input_file(a.input);

  nlohmann::json report;
  report["schema_version"] = kSchemaVersion;
  report["command"] = "analyze";
  report["seed"] = a.seed;
  nlohmann::json budgets;
  budgets["trials"] = a.trials;
  budgets["restarts"] = a.restarts;
  budgets["resamples"] = a.resamples;
  budgets["weak_trials"] = a.weak_trials;
  report["budgets"] = budgets;
  // Wall time goes to stderr so identical runs produce identical reports.
  report["timing"] = "wall time on stderr";

  bool affirmative = false;
  if (const auto* frame = std::get_if<Frame>(&input)) {
    report["input"] = frame_digest(*frame);
    report["bounds"] = bounds_json(frame->dim, frame->field);
    if (frame->field == Field::Real) {
      analyze_real_frame(*frame, a, report, affirmative);
    } else {
      analyze_complex_frame(*frame, a, report, affirmative);
    }
  } else {
    const auto& system = std::get<ProjectionSystem>(input);
    report["input"] = system_digest(system);
    report["bounds"] = bounds_json(system.dim, system.field);
    analyze_system(system, a, report, affirmative);
  }

  emit(report);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  std::cerr << "analyze: " << ms << " ms\n";
  return affirmative ? 0 : 1;
}

int run_falsify(const std::string& path, int restarts, std::uint64_t seed) {
  const InputObject input = framescope::load_input_file(path);
  const auto* frame = std::get_if<Frame>(&input);
  if (!frame) {
    throw framescope::InputError("falsify expects a frame input");
  }
  const auto pair = framescope::find_measurement_equal_pair(*frame, restarts, seed);

  nlohmann::json out;
  out["schema_version"] = kSchemaVersion;
  out["command"] = "falsify";
  out["input"] = frame_digest(*frame);
  out["restarts"] = restarts;
  out["seed"] = seed;
  if (pair) {
    out["certificate"] = framescope::to_json(
        Certificate(MeasurementEqualPair{pair->first, pair->second}),
        frame->field);
  } else {
    out["certificate"] = nullptr;
  }
  emit(out);
  return pair ? 0 : 1;
}

int run_recover(const std::string& frame_path, const std::string& meas_path,
                int restarts, std::uint64_t seed) {
  const InputObject input = framescope::load_input_file(frame_path);
  const auto* frame = std::get_if<Frame>(&input);
  if (!frame) {
    throw framescope::InputError("recover expects a frame input");
  }
  const Measurements meas = framescope::load_measurements_file(meas_path);

  nlohmann::json out;
  out["schema_version"] = kSchemaVersion;
  out["command"] = "recover";
  out["input"] = frame_digest(*frame);
  try {
    const framescope::RecoveryResult rec =
        frame->field == Field::Real
            ? framescope::recover_real(*frame, meas)
            : framescope::recover_complex(*frame, meas, restarts, seed);
    nlohmann::json cands = nlohmann::json::array();
    for (const auto& c : rec.candidates) {
      cands.push_back(framescope::vector_to_json(c, frame->field));
    }
    out["candidates"] = std::move(cands);
    out["residuals"] = rec.residuals;
    emit(out);
    return 0;
  } catch (const framescope::DataError& e) {
    out["error"] = e.what();
    emit(out);
    return 1;
  }
}

struct IdentityArgs {
  int trials = 10000;
  std::uint64_t seed = 0;
  double perturb = 0.0;  // test hook: added to every measured deviation
};

int run_identities(const IdentityArgs& a) {
  nlohmann::json rows = nlohmann::json::array();
  bool all_pass = true;

  const auto add_row = [&](const std::string& name, int trials,
                           double max_dev, double threshold) {
    const bool pass = max_dev < threshold;
    all_pass = all_pass && pass;
    nlohmann::json r;
    r["identity"] = name;
    r["trials"] = trials;
    r["max_deviation"] = max_dev;
    r["threshold"] = threshold;
    r["pass"] = pass;
    rows.push_back(r);
  };

  if (a.trials > 0) {
    // Rank-one terms are orthogonal to the rotated base point: for every
    // frame vector, <phi phi* u, iu>_R = 0.
    double dev_orth = 0.0;
    for (int t = 0; t < a.trials; ++t) {
      Rng rng = Rng::derived(a.seed, static_cast<std::uint64_t>(t));
      const int m = 2 + t % 5;
      std::vector<Eigen::VectorXcd> vs;
      for (int i = 0; i < 3; ++i) vs.push_back(rng.cgaussian_vec(m));
      const Frame frame(Field::Complex, m, std::move(vs));
      const Eigen::VectorXcd u = rng.cgaussian_vec(m);
      double top = 0.0;
      for (const auto& v : frame.vectors) top = std::max(top, v.squaredNorm());
      const double scale = std::max(1.0, u.squaredNorm() * top);
      dev_orth = std::max(
          dev_orth,
          framescope::lemma_orthogonality_check(frame, u) / scale + a.perturb);
    }
    add_row("rank-one orthogonality", a.trials, dev_orth, 1e-11);

    // |<u+v,phi>|^2 - |<u-v,phi>|^2 = 4 <phi phi* u, v>_R.
    double dev_polar = 0.0;
    for (int t = 0; t < a.trials; ++t) {
      Rng rng = Rng::derived(a.seed, 1ull << 32 | static_cast<std::uint64_t>(t));
      const int m = 2 + t % 5;
      std::vector<Eigen::VectorXcd> vs;
      for (int i = 0; i < 3; ++i) vs.push_back(rng.cgaussian_vec(m));
      const Frame frame(Field::Complex, m, std::move(vs));
      const Eigen::VectorXcd u = rng.cgaussian_vec(m);
      const Eigen::VectorXcd v = rng.cgaussian_vec(m);
      dev_polar = std::max(
          dev_polar, framescope::polarization_check(frame, u, v) + a.perturb);
    }
    add_row("polarization", a.trials, dev_polar, 1e-11);

    // arg(a+b) = arg(e^{i theta}(a-b)) mod pi with theta from tan_theta;
    // every tenth pair has |a| = |b| forced to exercise the pi/2 branch.
    double dev_angle = 0.0;
    for (int t = 0; t < a.trials; ++t) {
      Rng rng = Rng::derived(a.seed, 2ull << 32 | static_cast<std::uint64_t>(t));
      const Complex aa = rng.cgaussian();
      Complex bb = rng.cgaussian();
      if (t % 10 == 0) bb *= std::abs(aa) / std::abs(bb);
      const double theta = framescope::tan_theta(aa, bb) + a.perturb;
      if (std::abs(aa + bb) < 1e-12 || std::abs(aa - bb) < 1e-12) continue;
      const Complex lhs = aa + bb;
      const Complex rhs = std::exp(Complex(0.0, theta)) * (aa - bb);
      const Complex rel = lhs * std::conj(rhs);
      dev_angle = std::max(
          dev_angle, std::atan2(std::abs(rel.imag()), std::abs(rel.real())));
    }
    add_row("phase angle relation", a.trials, dev_angle, 1e-9);
  }

  nlohmann::json out;
  out["schema_version"] = kSchemaVersion;
  out["command"] = "identities";
  out["trials"] = a.trials;
  out["seed"] = a.seed;
  out["rows"] = std::move(rows);
  out["all_pass"] = all_pass;
  emit(out);
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"framescope: phase-retrieval properties of finite frames"};
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* cmd_gen =
      app.add_subcommand("generate", "write a frame or projection system");
  cmd_gen
      ->add_option("kind", gen.kind,
                   "gaussian-real | gaussian-complex | weak-pr | projections")
      ->required();
  cmd_gen->add_option("-m,--dim", gen.m, "ambient dimension")->required();
  cmd_gen->add_option("-n,--count", gen.n, "number of frame vectors");
  cmd_gen->add_option("--dims", gen.dims,
                      "subspace dimensions (projections kind)")
      ->delimiter(',');
  cmd_gen->add_option("--field", gen.field,
                      "projections field: real | complex")
      ->check(CLI::IsMember({"real", "complex"}));
  cmd_gen->add_option("--seed", gen.seed, "RNG seed");
  cmd_gen->add_option("-o,--output", gen.output, "output path");

  AnalyzeArgs an;
  CLI::App* cmd_an = app.add_subcommand("analyze", "full property report");
  cmd_an->add_option("input", an.input, "frame or system JSON file")
      ->required();
  cmd_an->add_option("--trials", an.trials, "sampling trials")
      ->check(CLI::NonNegativeNumber);
  cmd_an->add_option("--restarts", an.restarts, "falsifier restarts")
      ->check(CLI::PositiveNumber);
  cmd_an->add_option("--resamples", an.resamples, "stability resamples")
      ->check(CLI::PositiveNumber);
  cmd_an->add_option("--weak-trials", an.weak_trials,
                     "weak phase retrieval trials")
      ->check(CLI::PositiveNumber);
  cmd_an->add_option("--seed", an.seed, "RNG seed");

  std::string fal_input;
  int fal_restarts = 200;
  std::uint64_t fal_seed = 0;
  CLI::App* cmd_fal =
      app.add_subcommand("falsify", "search for a measurement-equal pair");
  cmd_fal->add_option("input", fal_input, "frame JSON file")->required();
  cmd_fal->add_option("--restarts", fal_restarts, "search restarts")
      ->check(CLI::PositiveNumber);
  cmd_fal->add_option("--seed", fal_seed, "RNG seed");

  std::string rec_frame, rec_meas;
  int rec_restarts = 200;
  std::uint64_t rec_seed = 0;
  CLI::App* cmd_rec =
      app.add_subcommand("recover", "invert squared-magnitude measurements");
  cmd_rec->add_option("frame", rec_frame, "frame JSON file")->required();
  cmd_rec->add_option("measurements", rec_meas, "measurements JSON file")
      ->required();
  cmd_rec->add_option("--restarts", rec_restarts, "complex recovery restarts")
      ->check(CLI::PositiveNumber);
  cmd_rec->add_option("--seed", rec_seed, "RNG seed");

  IdentityArgs id;
  CLI::App* cmd_id =
      app.add_subcommand("identities", "run the measurement identity suite");
  cmd_id->add_option("--trials", id.trials, "instances per identity")
      ->check(CLI::NonNegativeNumber);
  cmd_id->add_option("--seed", id.seed, "RNG seed");
  cmd_id->add_option("--perturb", id.perturb, "")->group("");  // test hook

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (cmd_gen->parsed()) return run_generate(gen);
    if (cmd_an->parsed()) return run_analyze(an);
    if (cmd_fal->parsed()) return run_falsify(fal_input, fal_restarts, fal_seed);
    if (cmd_rec->parsed())
      return run_recover(rec_frame, rec_meas, rec_restarts, rec_seed);
    if (cmd_id->parsed()) return run_identities(id);
  } catch (const framescope::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
