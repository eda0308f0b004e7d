// Command-line front end: one subcommand per library operation.

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "streamzero/acceptance.hpp"
#include "streamzero/parallel.hpp"
#include "streamzero/serialize.hpp"
#include "streamzero/streamzero.hpp"

namespace {

using namespace streamzero;

struct RunConfig {
  double precision = 1e-12;
  std::string window = "-20..20";
  std::string search_window = "0..7";
  std::string sample_window = "0..15";
  long grid = 1024;
  long word_len = 10;
  std::string mode = "exact";
  std::string output = "json";
  unsigned threads = 0;
  std::string out_file;
};

json poly_json(const LaurentPoly& p) { return json{{"text", p.to_string()}, {"coeffs", to_json(p)}}; }

LaurentPoly poly_arg(const std::string& s) { return parse_poly(s); }

std::string csv_torus(const TorusSeq& x) {
  std::string s = "index,value\n";
  for (long n = x.start; n <= x.end(); ++n) s += std::to_string(n) + "," + to_string(x.at(n)) + "\n";
  return s;
}

std::string csv_torus(const TorusSeqF& x) {
  std::ostringstream os;
  os.precision(17);
  os << "index,value\n";
  for (long n = x.start; n <= x.end(); ++n) os << n << "," << x.at(n) << "\n";
  return os.str();
}

std::string csv_word(const CodeWord& w) {
  std::string s = "index,letter\n";
  for (long n = w.start; n <= w.end(); ++n) s += std::to_string(n) + "," + std::to_string(w.at(n)) + "\n";
  return s;
}

CodeWord word_arg(const std::string& letters, long start, bool periodic) {
  return CodeWord{start, parse_long_list(letters), periodic};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"streamzero: stream zeros of integer polynomials"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--precision", cfg.precision, "float precision")->check(CLI::PositiveNumber);
  app.add_option("--out", cfg.out_file, "write the report to this file");
  app.add_option("--threads", cfg.threads, "worker threads (default: STREAMZERO_THREADS or hardware)");
  app.add_option("--output", cfg.output, "json | csv | table")->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_option("--mode", cfg.mode, "exact | float")->check(CLI::IsMember({"exact", "float"}));

  std::string poly_a, poly_b, values, letters, theta, seed;
  long start = 0, forward = 10, backward = 0, k_dim = -1, samples = 10, rng_seed = 1, branch_depth = -1;
  std::size_t branch = 0;
  bool periodic = false;
  std::string disc;

  auto* c_inverse = app.add_subcommand("inverse", "convolution inverse of a hyperbolic polynomial");
  c_inverse->add_option("poly", poly_a)->required();
  c_inverse->add_option("--window", cfg.window, "lo..hi");

  auto* c_orbit = app.add_subcommand("orbit", "orbit window on the torus");
  c_orbit->add_option("poly", poly_a)->required();
  c_orbit->add_option("--seed", seed, "k comma-separated values in [0,1)")->required();
  c_orbit->add_option("--forward", forward);
  c_orbit->add_option("--backward", backward);
  c_orbit->add_option("--branch", branch);

  auto* c_encode = app.add_subcommand("encode", "code word P x x of an orbit window");
  c_encode->add_option("poly", poly_a)->required();
  c_encode->add_option("--values", values, "comma-separated orbit values")->required();
  c_encode->add_option("--start", start);
  c_encode->add_flag("--periodic", periodic, "values are one period");

  auto* c_decode = app.add_subcommand("decode", "orbit of a code word");
  c_decode->add_option("poly", poly_a)->required();
  c_decode->add_option("--word", letters, "comma-separated letters")->required();
  c_decode->add_option("--start", start);
  c_decode->add_flag("--periodic", periodic);
  c_decode->add_option("--window", cfg.window, "lo..hi");

  auto* c_adm = app.add_subcommand("admissible", "membership of a code word in the symbolic system");
  c_adm->add_option("poly", poly_a)->required();
  c_adm->add_option("--word", letters)->required();
  c_adm->add_option("--start", start);
  c_adm->add_flag("--periodic", periodic);

  auto* c_entropy = app.add_subcommand("entropy", "topological entropy, exact and by word counting");
  c_entropy->add_option("poly", poly_a)->required();
  c_entropy->add_option("--grid", cfg.grid)->check(CLI::Range(2L, 1L << 30));
  c_entropy->add_option("--word-len", cfg.word_len)->check(CLI::Range(1L, 40L));
  c_entropy->add_option("--branch-depth", branch_depth, "backward branch depth (-1: automatic)");

  auto* c_res = app.add_subcommand("resultant", "resultant and Sylvester matrix");
  c_res->add_option("P", poly_a)->required();
  c_res->add_option("Q", poly_b)->required();

  auto* c_bez = app.add_subcommand("bezout", "integer Bezout identity A P + B Q = Delta");
  c_bez->add_option("P", poly_a)->required();
  c_bez->add_option("Q", poly_b)->required();

  auto* c_dim = app.add_subcommand("dim", "dimension of the stream zeros");
  c_dim->add_option("poly", poly_a)->required();
  c_dim->add_option("--k", k_dim, "window length to check (default: the dimension and one more)");
  c_dim->add_option("--grid", cfg.grid)->check(CLI::Range(2L, 1L << 20));

  auto* c_cz = app.add_subcommand("common-zeros", "common stream zeros of two coprime polynomials");
  c_cz->add_option("P", poly_a)->required();
  c_cz->add_option("Q", poly_b)->required();
  c_cz->add_option("--window", cfg.search_window, "lo..hi");

  auto* c_dec = app.add_subcommand("decompose", "split sampled zeros of P Q into zeros of P and of Q");
  c_dec->add_option("P", poly_a)->required();
  c_dec->add_option("Q", poly_b)->required();
  c_dec->add_option("--samples", samples)->check(CLI::Range(1L, 10000L));
  c_dec->add_option("--seed", rng_seed);
  c_dec->add_option("--window", cfg.sample_window, "lo..hi");

  auto* c_saut = app.add_subcommand("saut", "strong automorphism group of a quadratic polynomial");
  c_saut->add_option("poly", poly_a)->required();

  auto* c_pell = app.add_subcommand("pell", "fundamental solution of w^2 - D v^2 = +-4");
  c_pell->add_option("D", disc)->required();

  auto* c_cf = app.add_subcommand("cf", "continued fraction of a quadratic irrational");
  c_cf->add_option("theta", theta)->required();

  auto* c_verify = app.add_subcommand("verify-all", "run the acceptance criteria");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const unsigned threads = cfg.threads ? cfg.threads : default_threads();
  const bool exact = cfg.mode == "exact";
  std::string text;
  int status = 0;

  try {
    auto emit = [&](const json& j) { text = j.dump(2) + "\n"; };

    if (*c_inverse) {
      LaurentPoly p = poly_arg(poly_a);
      auto [lo, hi] = parse_range(cfg.window);
      Stream inv = inverse(p, cfg.precision);
      json j{{"poly", poly_json(p)}, {"inverse", to_json(inv, lo, hi, cfg.precision)}};
      if (p.span() <= 2) {
        try {
          QuadraticInverse q(p);
          json ex = json::array();
          for (long n = lo; n <= hi; ++n) ex.push_back(q.at(n).to_string());
          j["exact"] = ex;
        } catch (const Error&) {
        }
      }
      if (cfg.output == "csv") {
        Window w = window_of(inv, lo, hi, cfg.precision);
        std::ostringstream os;
        os.precision(17);
        os << "index,value\n";
        for (long n = lo; n <= hi; ++n) os << n << "," << w.values[static_cast<std::size_t>(n - lo)] << "\n";
        text = os.str();
      } else {
        emit(j);
      }
    } else if (*c_orbit) {
      LaurentPoly p = poly_arg(poly_a);
      if (exact) {
        TorusSeq x = orbit<Rational>(p, parse_rational_list(seed), forward, backward, branch);
        if (cfg.output == "csv") text = csv_torus(x);
        else emit(json{{"poly", poly_json(p)}, {"orbit", to_json(x)}});
      } else {
        std::vector<double> s;
        for (const auto& v : parse_rational_list(seed)) s.push_back(to_double(v));
        TorusSeqF x = orbit<double>(p, s, forward, backward, branch);
        if (cfg.output == "csv") text = csv_torus(x);
        else emit(json{{"poly", poly_json(p)}, {"orbit", to_json(x)}});
      }
    } else if (*c_encode) {
      LaurentPoly p = poly_arg(poly_a);
      TorusSeq x{start, parse_rational_list(values), periodic};
      CodeWord w = encode(p, x);
      if (cfg.output == "csv") text = csv_word(w);
      else emit(json{{"poly", poly_json(p)}, {"word", to_json(w)}});
    } else if (*c_decode) {
      LaurentPoly p = poly_arg(poly_a);
      auto [lo, hi] = parse_range(cfg.window);
      CodeWord w = word_arg(letters, start, periodic);
      if (exact) {
        TorusSeq x = decode(p, w, lo, hi);
        if (cfg.output == "csv") text = csv_torus(x);
        else emit(json{{"poly", poly_json(p)}, {"orbit", to_json(x)}});
      } else {
        TorusSeqF x = decode_float(p, w, lo, hi, cfg.precision);
        if (cfg.output == "csv") text = csv_torus(x);
        else emit(json{{"poly", poly_json(p)}, {"orbit", to_json(x)}});
      }
    } else if (*c_adm) {
      LaurentPoly p = poly_arg(poly_a);
      CodeWord w = word_arg(letters, start, periodic);
      Verdict v = is_admissible(p, w, cfg.precision);
      emit(json{{"poly", poly_json(p)}, {"word", to_json(w)}, {"verdict", verdict_name(v)}});
    } else if (*c_entropy) {
      LaurentPoly p = poly_arg(poly_a);
      double h = entropy_exact(p);
      EntropyOptions opts;
      opts.branch_depth = branch_depth;
      opts.threads = threads;
      EntropyEstimate est = entropy_estimate(p, cfg.word_len, cfg.grid, opts);
      if (cfg.output == "json") {
        json rows = json::array();
        for (const auto& r : est.rows)
          rows.push_back(json{{"n", r.n}, {"count", r.count}, {"estimate", r.estimate}, {"conditional", r.conditional},
                              {"exact", h}, {"gap", std::fabs(r.estimate - h)}});
        emit(json{{"poly", poly_json(p)}, {"exact", h}, {"grid", cfg.grid}, {"branch_depth", est.branch_depth},
                  {"seeds", est.seeds}, {"rows", rows}});
      } else {
        std::ostringstream os;
        os.precision(10);
        const char* sep = cfg.output == "csv" ? "," : "\t";
        os << "n" << sep << "count" << sep << "estimate" << sep << "conditional" << sep << "exact" << sep << "gap\n";
        for (const auto& r : est.rows)
          os << r.n << sep << r.count << sep << r.estimate << sep << r.conditional << sep << h << sep
             << std::fabs(r.estimate - h) << "\n";
        text = os.str();
      }
    } else if (*c_res) {
      LaurentPoly p = poly_arg(poly_a), q = poly_arg(poly_b);
      ResultantInfo info = resultant(p, q);
      json m = json::array();
      for (const auto& row : info.matrix) {
        json r = json::array();
        for (const auto& v : row) r.push_back(to_json(v));
        m.push_back(r);
      }
      emit(json{{"P", poly_json(p)}, {"Q", poly_json(q)}, {"delta", to_json(info.delta)}, {"matrix", m}});
    } else if (*c_bez) {
      LaurentPoly p = poly_arg(poly_a), q = poly_arg(poly_b);
      BezoutResult b = bezout(p, q);
      emit(json{{"P", poly_json(p)}, {"Q", poly_json(q)}, {"A", poly_json(b.a)}, {"B", poly_json(b.b)},
                {"delta", to_json(b.delta)}});
    } else if (*c_dim) {
      LaurentPoly p = poly_arg(poly_a);
      long d = dim_omega(p);
      json checks = json::array();
      std::vector<long> ks = k_dim >= 0 ? std::vector<long>{k_dim} : std::vector<long>{d, d + 1};
      for (long k : ks) checks.push_back(json{{"k", k}, {"grid", cfg.grid}, {"extends", dim_check(p, k, cfg.grid)}});
      emit(json{{"poly", poly_json(p)}, {"dim", d}, {"checks", checks}});
    } else if (*c_cz) {
      LaurentPoly p = poly_arg(poly_a), q = poly_arg(poly_b);
      auto [lo, hi] = parse_range(cfg.search_window);
      json list = json::array();
      for (const auto& x : enumerate_common_zeros(p, q, lo, hi)) list.push_back(to_json(x));
      emit(json{{"P", poly_json(p)}, {"Q", poly_json(q)}, {"delta", to_json(resultant(p, q).delta)}, {"zeros", list}});
    } else if (*c_dec) {
      LaurentPoly p = poly_arg(poly_a), q = poly_arg(poly_b);
      auto [lo, hi] = parse_range(cfg.sample_window);
      std::mt19937_64 rng(static_cast<std::uint64_t>(rng_seed));
      json list = json::array();
      for (long s = 0; s < samples; ++s) {
        TorusSeq x = random_member(p * q, rng, lo, hi, 1 + static_cast<long>(rng() % 60));
        DecompositionWitness w = decompose(p, q, x);
        list.push_back(json{{"x", to_json(x)}, {"u", to_json(w.u)}, {"v", to_json(w.v)}});
      }
      BezoutResult b = bezout(p, q);
      emit(json{{"P", poly_json(p)}, {"Q", poly_json(q)}, {"delta", to_json(b.delta)}, {"A", poly_json(b.a)},
                {"B", poly_json(b.b)}, {"samples", list}});
    } else if (*c_saut) {
      LaurentPoly p = poly_arg(poly_a);
      SautReport r = saut_group(p);
      json j{{"poly", poly_json(p)}, {"class", saut_kind_name(r.cls.kind)}, {"D", to_json(r.discriminant)},
             {"sign_flipped", r.sign_flipped}};
      j["generator"] = r.cls.generator ? to_json(*r.cls.generator) : json(nullptr);
      if (r.cf_generator) j["cf_generator"] = to_json(*r.cf_generator);
      if (r.pell) {
        json pj = to_json(*r.pell);
        pj["D"] = to_json(r.discriminant);
        j["pell"] = pj;
      }
      if (r.cf) j["cf"] = to_json(*r.cf);
      if (r.cls.generator) {
        if (r.discriminant != 0) {
          Eigendata e = saut_eigendata(*r.cls.generator, p);
          json ev = json::array();
          for (const auto& l : e.exact_eigenvalues) ev.push_back(l.to_string());
          j["eigenvalues"] = ev;
        }
        if (r.cls.kind == SautKind::infinite_cyclic) j["generator_minimal"] = saut_generator_minimal(p, *r.cls.generator);
      }
      emit(j);
    } else if (*c_pell) {
      Integer D = parse_integer(disc);
      json j = to_json(pell_solve(D));
      j["D"] = to_json(D);
      emit(j);
    } else if (*c_cf) {
      QuadIrr t = parse_quad(theta);
      ContinuedFraction cf = cf_expand(t);
      json j{{"theta", t.to_string()}, {"cf", to_json(cf)}};
      if (!cf.is_rational()) {
        CFMatrices m = cf_matrices(cf);
        j["preperiod_matrix"] = to_json(m.preperiod_matrix());
        j["period_matrix"] = to_json(m.period_matrix());
        j["generator"] = to_json(m.generator());
      }
      emit(j);
    } else if (*c_verify) {
      auto results = run_acceptance(threads);
      std::ostringstream os;
      bool all = true;
      for (const auto& r : results) {
        os << format_result(r) << "\n";
        all = all && r.pass;
      }
      text = os.str();
      status = all ? 0 : 1;
    }
  } catch (const ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n\n" << app.help();
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  if (!cfg.out_file.empty()) {
    std::ofstream f(cfg.out_file);
    if (!f) {
      std::cerr << "error: cannot write " << cfg.out_file << "\n";
      return 1;
    }
    f << text;
  } else {
    std::cout << text;
  }
  return status;
}
