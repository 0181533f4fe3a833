// Copyright 2026 The stokes-data Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Every subcommand loads its input, calls one library
// operation and prints a JSON report:
//
//   {"command", "input_digest", "scalar_mode", "tol", "verdict", "details", "timings"}
//
// Exit status: 0 success, 1 a check or verdict failed, 2 invalid input (a
// JSON error object is printed instead of a report).

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "stokes/io.hpp"

using namespace stokes;

namespace {

struct Globals {
  double tol = 1e-9;
  std::string mode;  // empty: from the file
  bool timings = true;
};

struct Outcome {
  std::string verdict;
  json details;
  int code = 0;
};

struct Document {
  json doc;
  std::string digest;
};

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Document read_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FieldError(ErrorKind::ParseError, path, "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  Document d;
  d.digest = sha256_hex(text);
  try {
    d.doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FieldError(ErrorKind::ParseError, path, e.what());
  }
  return d;
}

ScalarMode resolve_mode(const Globals& g, const json& doc) {
  if (!g.mode.empty()) return parse_mode(g.mode);
  if (doc.is_object() && doc.contains("scalar_mode")) {
    if (!doc["scalar_mode"].is_string()) throw FieldError(ErrorKind::ParseError, "scalar_mode", "expected a string");
    try {
      return parse_mode(doc["scalar_mode"].get<std::string>());
    } catch (const Error& e) {
      throw FieldError(ErrorKind::ParseError, "scalar_mode", e.what());
    }
  }
  return ScalarMode::GaussianRational;
}

// Errors that mean the input itself is unusable.
bool is_input_error(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError:
    case ErrorKind::InvalidData:
    case ErrorKind::NotGeneric:
    case ErrorKind::EqualFactors:
    case ErrorKind::BadParams:
    case ErrorKind::TypeMismatch:
    case ErrorKind::NotAdmissible:
    case ErrorKind::OnStokesDirection:
    case ErrorKind::SingularLoop:
    case ErrorKind::Unsatisfiable:
      return true;
    default:
      return false;
  }
}

json make_report(const std::string& command, const std::string& digest, const std::string& mode, const Globals& g,
                 const Outcome& o, double load_ms, double compute_ms) {
  json r = {{"command", command},
            {"input_digest", digest.empty() ? json(nullptr) : json(digest)},
            {"scalar_mode", mode},
            {"tol", g.tol},
            {"verdict", o.verdict},
            {"details", o.details}};
  if (g.timings) r["timings"] = {{"load_ms", load_ms}, {"compute_ms", compute_ms}};
  return r;
}

struct Result {
  json out;
  int code = 0;
};

// Runs one command with error classification. body() returns the
// report; library errors become exit 2 (input) or a FAILED report (exit 1).
template <class Body>
Result guarded(const std::string& command, const std::string& digest, const Globals& g, Body&& body) {
  try {
    return body();
  } catch (const Error& e) {
    json err = error_to_json(e);
    if (is_input_error(e.kind())) {
      err["command"] = command;
      return {err, 2};
    }
    Outcome o{"FAILED", {{"error", err}}, 1};
    return {make_report(command, digest, g.mode, g, o, 0.0, 0.0), 1};
  }
}

Tolerance tolerance(const Globals& g) { return Tolerance{g.tol}; }

// Loads one instance file and runs fn.template operator()<T>(data, tol).
template <class Fn>
Result run_instance(const std::string& command, const std::string& path, const Globals& g, Fn&& fn,
                    bool keep_order = false) {
  Document doc;
  try {
    doc = read_document(path);
  } catch (const Error& e) {
    json err = error_to_json(e);
    err["command"] = command;
    return {err, 2};
  }
  return guarded(command, doc.digest, g, [&]() -> Result {
    ScalarMode mode = resolve_mode(g, doc.doc);
    return dispatch_mode(mode, [&]<class T>() -> Result {
      auto t0 = Clock::now();
      StokesData<T> d = load_instance<T>(doc.doc, tolerance(g), keep_order);
      double load_ms = ms_since(t0);
      auto t1 = Clock::now();
      Outcome o = fn.template operator()<T>(d, tolerance(g));
      double compute_ms = ms_since(t1);
      return {make_report(command, doc.digest, to_string(mode), g, o, load_ms, compute_ms), o.code};
    });
  });
}

template <class T>
Matrix<T> expected_can(const StokesData<T>& d, const Tolerance& tol) {
  return inverse(d.sigma_prime, tol) - inverse(d.sigma, tol);
}

template <class T>
json equality_entry(const Matrix<T>& got, const Matrix<T>& want, const Tolerance& tol, bool& all_ok) {
  bool ok = approx_equal(got, want, tol);
  all_ok = all_ok && ok;
  return {{"equal", ok}, {"residual", got.rows() == want.rows() && got.cols() == want.cols() ? (got - want).norm() : -1.0}};
}

template <class T>
PointOf<T> choose_c(const StokesData<T>& d, const std::string& text, const Tolerance& tol) {
  using R = typename ScalarTraits<T>::Real;
  if (text.empty()) return admissible_point(d.type.factors, d.type.theta0, tol);
  auto comma = text.find(',');
  try {
    if (comma == std::string::npos) return {real_from_json<R>(json(text), "--c"), R(0)};
    return {real_from_json<R>(json(text.substr(0, comma)), "--c"), real_from_json<R>(json(text.substr(comma + 1)), "--c")};
  } catch (const Error&) {
    throw FieldError(ErrorKind::BadParams, "--c", "expected re,im with p/q components");
  }
}

void emit(const Result& r) { std::cout << r.out.dump(2) << std::endl; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stokes data toolkit"};
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  app.add_option("--tol", g.tol, "relative tolerance (rel_eps)");
  app.add_option("--mode", g.mode, "override scalar_mode")->check(CLI::IsMember({"float", "gaussian_rational", "rational"}));
  bool no_timings = false;
  app.add_flag("--no-timings", no_timings, "omit timings for byte-stable reports");

  std::string file, file2, svg_path, c_text;
  std::vector<std::string> files;
  std::size_t jobs = 1;

  auto* validate_cmd = app.add_subcommand("validate", "check every invariant of an instance");
  validate_cmd->add_option("file", file)->required();
  auto* order_cmd = app.add_subcommand("order", "factors in theta0 order and Stokes directions");
  order_cmd->add_option("file", file)->required();
  order_cmd->add_option("--svg", svg_path, "write a diagram");
  auto* monodromy_cmd = app.add_subcommand("monodromy", "T1 and graded monodromies");
  monodromy_cmd->add_option("file", file)->required();
  auto* iota_cmd = app.add_subcommand("iota", "apply the involution");
  iota_cmd->add_option("file", file)->required();
  auto* dual_cmd = app.add_subcommand("dual", "apply the duality");
  dual_cmd->add_option("file", file)->required();
  auto* hom_cmd = app.add_subcommand("hom", "basis of morphisms between two instances");
  hom_cmd->add_option("source", file)->required();
  hom_cmd->add_option("target", file2)->required();
  auto* minimality_cmd = app.add_subcommand("minimality", "decide whether every K_c vanishes");
  minimality_cmd->add_option("file", file)->required();
  auto* induced_cmd = app.add_subcommand("induced-form", "induced Hermitian form on F = Im can1");
  induced_cmd->add_option("file", file)->required();
  auto* kspaces_cmd = app.add_subcommand("k-spaces", "the spaces K_c with their forms");
  kspaces_cmd->add_option("file", file)->required();
  auto* split_cmd = app.add_subcommand("split", "split off trivial summands");
  split_cmd->add_option("file", file)->required();
  auto* certify_cmd = app.add_subcommand("certify", "positivity certificate");
  certify_cmd->add_option("files", files)->required();
  certify_cmd->add_option("--jobs", jobs, "parallel workers for several files")->check(CLI::PositiveNumber);
  auto* cohomology_cmd = app.add_subcommand("cohomology", "Cech cohomology dimensions");
  cohomology_cmd->add_option("file", file)->required();
  cohomology_cmd->add_option("--c", c_text, "point c as re,im (default: admissible point)");
  auto* cech_cmd = app.add_subcommand("cech-check", "compare Cech constructions with matrix formulas");
  cech_cmd->add_option("file", file)->required();
  cech_cmd->add_option("--c", c_text, "point c as re,im (default: admissible point)");
  auto* indices_cmd = app.add_subcommand("indices", "partial indices of a matrix loop");
  indices_cmd->add_option("file", file)->required();
  std::size_t max_modes = 256;
  indices_cmd->add_option("--max-modes", max_modes, "truncation cap");

  auto* gen_cmd = app.add_subcommand("gen", "generate an instance");
  GeneratorOptions gen;
  std::string out_path, lambda_sign = "random";
  bool random_valid = false;
  gen_cmd->add_option("--n", gen.n_factors, "number of factors");
  gen_cmd->add_option("--dims", gen.dims, "block sizes")->delimiter(',');
  std::optional<std::size_t> gen_rank;
  gen_cmd->add_option("--rank", gen_rank, "rank of sigma + sigma^* (default: full)");
  gen_cmd->add_option("--seed", gen.seed, "random seed");
  gen_cmd->add_option("--out", out_path, "output file (default: stdout)");
  gen_cmd->add_flag("--aligned-kernel", gen.aligned_kernel, "coordinate kernel of sigma + sigma^*");
  gen_cmd->add_option("--lambda-sign", lambda_sign)->check(CLI::IsMember({"random", "positive", "negative"}));
  gen_cmd->add_flag("--random-valid", random_valid, "independent random sigma, sigma_prime");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << json{{"error", "BadParams"}, {"message", e.what()}}.dump(2) << std::endl;
    return 2;
  }
  g.timings = !no_timings;
  const Tolerance tol{g.tol};
  Result res;

  if (*validate_cmd) {
    res = run_instance("validate", file, g, [&]<class T>(const StokesData<T>& d, const Tolerance& t) {
      ValidationReport r = validate(d, t);
      return Outcome{r.valid() ? "VALID" : "INVALID", {{"validation", to_json(r)}}, r.valid() ? 0 : 1};
    }, true);
  } else if (*order_cmd) {
    res = run_instance("order", file, g, [&]<class T>(const StokesData<T>& d, const Tolerance& t) {
      json details = order_report(d, t);
      if (!svg_path.empty()) {
        std::ofstream(svg_path) << order_svg(d);
        details["svg"] = svg_path;
      }
      return Outcome{"OK", details, 0};
    });
  } else if (*monodromy_cmd) {
    res = run_instance("monodromy", file, g, [&]<class T>(const StokesData<T>& d, const Tolerance& t) {
      return Outcome{"OK", to_json(monodromy(d, t)), 0};
    });
  } else if (*iota_cmd || *dual_cmd) {
    bool is_iota = iota_cmd->parsed();
    res = run_instance(is_iota ? "iota" : "dual", file, g, [&]<class T>(const StokesData<T>& d, const Tolerance& t) {
      StokesData<T> e = is_iota ? iota(d, t) : dualize(d, t);
      ValidationReport r = validate(e, t);
      return Outcome{r.valid() ? "VALID" : "INVALID", {{"result", save_instance(e)}, {"validation", to_json(r)}},
                     r.valid() ? 0 : 1};
    });
  } else if (*hom_cmd) {
    Document other;
    try {
      other = read_document(file2);
    } catch (const Error& e) {
      json err = error_to_json(e);
      err["command"] = "hom";
      emit({err, 2});
      return 2;
    }
    res = run_instance("hom", file, g, [&]<class T>(const StokesData<T>& d, const Tolerance& t) {
      StokesData<T> e = load_instance<T>(other.doc, t);
      auto basis = hom_space(d, e, t);
      json b = json::array();
      for (const auto& m : basis) b.push_back({{"lambda1", matrix_to_json(m.lambda1)}, {"lambda2", matrix_to_json(m.lambda2)}});
      return Outcome{"OK", {{"dim", basis.size()}, {"target_digest", other.digest}, {"basis", b}}, 0};
    });
  } else if (*minimality_cmd || *kspaces_cmd) {
    bool minimality = minimality_cmd->parsed();
    res = run_instance(minimality ? "minimality" : "k-spaces", file, g,
                       [&]<class T>(const StokesData<T>& d, const Tolerance& t) {
                         auto ks = k_spaces(d, t);
                         json arr = json::array();
                         bool minimal = true;
                         for (const auto& k : ks) {
                           arr.push_back(to_json(k));
                           minimal = minimal && k.basis.cols() == 0;
                         }
                         std::string verdict = minimality ? (minimal ? "MINIMAL" : "NOT_MINIMAL") : "OK";
                         return Outcome{verdict, {{"minimal", minimal}, {"k_spaces", arr}}, 0};
                       });
  } else if (*induced_cmd) {
    res = run_instance("induced-form", file, g, [&]<class T>(const StokesData<T>& d, const Tolerance& t) {
      InducedForm<T> f = induced_form_on_F(d, t);
      json details = to_json(f);
      std::string verdict = "NOT_HERMITIAN";
      if (is_hermitian(f.gram, t)) {
        auto h = hermitian_classify(f.gram, t);
        details["classification"] = to_json(h);
        verdict = to_string(h.cls);
      }
      return Outcome{verdict, details, 0};
    });
  } else if (*split_cmd) {
    res = run_instance("split", file, g, [&]<class T>(const StokesData<T>& d, const Tolerance& t) {
      SplitResult<T> s = split_minimal(d, t);
      StokesData<T> back = reassemble(s, t);
      bool ok = back.type == d.type && approx_equal(back.sigma, d.sigma, t) &&
                approx_equal(back.sigma_prime, d.sigma_prime, t);
      json details = to_json(s);
      details["reassembles_input"] = ok;
      return Outcome{ok ? "OK" : "FAILED", details, ok ? 0 : 1};
    });
  } else if (*certify_cmd) {
    std::vector<Result> results(files.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next++; i < files.size(); i = next++)
        results[i] = run_instance("certify", files[i], g, [&]<class T>(const StokesData<T>& d, const Tolerance& t) {
          Certificate<T> c = certify(d, t);
          bool ok = c.verdict == Verdict::CertifiedPurePolarized;
          return Outcome{to_string(c.verdict), to_json(c), ok ? 0 : 1};
        });
    };
    std::vector<std::thread> pool;
    for (std::size_t k = 1; k < std::min(jobs, files.size()); ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (results.size() == 1) {
      res = results.front();
    } else {
      res.out = json::array();
      for (const auto& r : results) {
        res.out.push_back(r.out);
        res.code = std::max(res.code, r.code);
      }
    }
  } else if (*cohomology_cmd) {
    res = run_instance("cohomology", file, g, [&]<class T>(const StokesData<T>& d, const Tolerance& t) {
      CohomologyReport<T> r = cohomology_report(d, choose_c(d, c_text, t), t);
      return Outcome{r.consistent ? "CONSISTENT" : "INCONSISTENT", to_json(r), r.consistent ? 0 : 1};
    });
  } else if (*cech_cmd) {
    res = run_instance("cech-check", file, g, [&]<class T>(const StokesData<T>& d, const Tolerance& t) {
      PointOf<T> c = choose_c(d, c_text, t);
      bool ok = true;
      json details = {{"c", point_to_json(c)}};
      details["can"] = equality_entry(can_via_cech(d, c, t), expected_can(d, t), t, ok);
      if (compatibility_holds(d, Matrix<T>::identity(d.type.total()), t)) {
        Matrix<T> want = inverse(d.sigma, t).transpose() * d.sigma_prime.conj();
        json p = json::object();
        p["averaged"] = equality_entry(pairing_via_cech(d, c, CupRule::Averaged, t), want, t, ok);
        p["first_chart"] = equality_entry(pairing_via_cech(d, c, CupRule::FirstChart, t), want, t, ok);
        p["second_chart"] = equality_entry(pairing_via_cech(d, c, CupRule::SecondChart, t), want, t, ok);
        details["pairing"] = p;
        InducedForm<T> f = induced_form_on_F(d, t);
        details["induced_form"] = equality_entry(induced_form_via_cech(d, c, f.param_basis, CupRule::Averaged, t),
                                                 f.gram, t, ok);
      } else {
        details["pairing"] = {{"skipped", "the pairing gram12 = Id is not compatible with this data"}};
      }
      return Outcome{ok ? "PASS" : "FAIL", details, ok ? 0 : 1};
    });
  } else if (*indices_cmd) {
    Document doc;
    try {
      doc = read_document(file);
    } catch (const Error& e) {
      json err = error_to_json(e);
      err["command"] = "indices";
      emit({err, 2});
      return 2;
    }
    res = guarded("indices", doc.digest, g, [&]() -> Result {
      auto t0 = Clock::now();
      MatrixLoop loop = load_loop(doc.doc);
      double load_ms = ms_since(t0);
      auto t1 = Clock::now();
      IndexResult r = partial_indices(loop, IndexOptions{g.tol, max_modes, 0});
      Outcome o{r.pure() ? "PURE" : "NOT_PURE", to_json(r), r.consistent ? 0 : 1};
      return {make_report("indices", doc.digest, "float", g, o, load_ms, ms_since(t1)), o.code};
    });
  } else if (*gen_cmd) {
    ScalarMode mode = g.mode.empty() ? ScalarMode::GaussianRational : parse_mode(g.mode);
    gen.lambda_sign = lambda_sign == "positive"   ? LambdaSign::Positive
                      : lambda_sign == "negative" ? LambdaSign::Negative
                                                  : LambdaSign::Random;
    res = guarded("gen", "", g, [&]() -> Result {
      return dispatch_mode(mode, [&]<class T>() -> Result {
        auto t0 = Clock::now();
        GeneratorOptions o = gen;
        std::size_t total = 0;
        if (o.dims.empty()) o.dims.assign(o.n_factors, 1);
        for (auto k : o.dims) total += k;
        o.rank = gen_rank.value_or(total);
        StokesData<T> d = random_valid ? generate_random_valid<T>(o) : generate_certified<T>(o);
        json inst = save_instance(d);
        if (out_path.empty()) return {inst, 0};
        std::ofstream(out_path) << inst.dump(2) << "\n";
        json details = {{"out", out_path},
                        {"seed", o.seed},
                        {"n_factors", o.n_factors},
                        {"dims", o.dims},
                        {"rank", o.rank},
                        {"aligned_kernel", o.aligned_kernel},
                        {"lambda_sign", lambda_sign},
                        {"random_valid", random_valid},
                        {"output_digest", sha256_hex(inst.dump(2) + "\n")}};
        return {make_report("gen", "", to_string(mode), g, Outcome{"OK", details, 0}, 0.0, ms_since(t0)), 0};
      });
    });
  }
  emit(res);
  return res.code;
}
