#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "gapamp/io.hpp"
#include "gapamp/suites.hpp"

namespace {

using namespace gapamp;

Rat parse_rat_arg(const std::string& text) {
  std::size_t slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(text));
    Int num(text.substr(0, slash));
    Int den(text.substr(slash + 1));
    if (den <= 0) fail_param("rational denominator must be positive: " + text);
    return Rat(num, den);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail_param("malformed rational: " + text);
  }
}

std::string join_int_vec(const IntVec& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ' ';
    out += v[i].str();
  }
  return out;
}

struct ReduceOpts {
  std::string input;
  std::string gen_kind;
  std::uint64_t seed = 0;
  unsigned k = 1;
  std::uint64_t d = 4;
  std::uint64_t n_code = 16;
  std::string eta = "1/2";
  std::string q_override;
  std::string out_instance = "instance.txt";
  std::string out_certificate = "certificate.txt";
  std::string out_intermediate;
  std::string out_base;
  std::string out_setcover;
};

int cmd_reduce(const ReduceOpts& o) {
  ReductionParams params = ReductionParams::desk(o.seed, o.k, o.d, o.n_code, parse_rat_arg(o.eta));
  SetCoverInstance inst;
  if (!o.gen_kind.empty()) {
    InstanceKind kind;
    if (o.gen_kind == "yes") {
      kind = InstanceKind::yes;
    } else if (o.gen_kind == "no") {
      kind = InstanceKind::no;
    } else {
      fail_param("--gen expects yes or no");
    }
    Rng rng = Rng::stream(params.seed, stage::setcover);
    inst = gen_setcover(kind, params, rng);
    if (!o.out_setcover.empty()) write_text_file(o.out_setcover, format_setcover(inst));
  } else {
    if (o.input.empty()) fail_param("reduce needs an instance file or --gen");
    inst = parse_setcover(read_text_file(o.input));
  }
  std::optional<Int> q;
  if (!o.q_override.empty()) {
    try {
      q = Int(o.q_override);
    } catch (const std::exception&) {
      fail_param("malformed q override: " + o.q_override);
    }
  }
  PipelineRun run = run_pipeline(inst, params, q);
  write_text_file(o.out_instance, format_gap_instance(run.instance));
  write_text_file(o.out_certificate, format_certificate(run.cert));
  if (!o.out_intermediate.empty() && !run.degenerate) {
    write_text_file(o.out_intermediate, format_lattice(run.intermediate));
  }
  if (!o.out_base.empty()) write_text_file(o.out_base, format_lattice(run.base));
  std::cout << "kind=" << (run.kind == InstanceKind::yes ? "YES" : "NO")
            << " certified=" << (run.certified ? 1 : 0) << " degenerate=" << (run.degenerate ? 1 : 0)
            << "\n";
  std::cout << "seed=" << params.seed << " k=" << params.k << " q=" << run.cert.q << "\n";
  std::cout << "output_ambient=" << run.output.ambient << " output_rank=" << run.output.rank
            << " threshold=" << numerator(run.instance.threshold) << "/"
            << denominator(run.instance.threshold) << "\n";
  if (run.kind == InstanceKind::yes) {
    std::cout << "witness_norm_sq=" << run.witness_norm_sq
              << " shift_distance=" << run.shift_distance << "\n";
  }
  return 0;
}

int cmd_svp(const std::string& path, const std::string& p_arg, std::size_t ceiling) {
  Lattice l = parse_lattice(read_text_file(path));
  NormSel sel = NormSel::l2();
  if (p_arg == "inf") {
    sel = NormSel::max();
  } else {
    try {
      unsigned long p = std::stoul(p_arg);
      if (p == 0) fail_param("--p must be positive");
      sel = NormSel::finite(static_cast<unsigned>(p));
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      fail_param("malformed --p value: " + p_arg);
    }
  }
  if (!sel.inf && sel.p == 2) {
    SvpResult res = lambda1_exact(l, ceiling);
    std::cout << "p=2\nlambda_pow=" << res.norm_sq << "\nwitness=" << join_int_vec(res.vector)
              << "\nnodes=" << res.nodes << "\n";
  } else {
    LpResult res = lambda1_lp(l, sel, ceiling);
    std::cout << "p=" << p_arg << "\nlambda_pow=" << res.value
              << "\nwitness=" << join_int_vec(res.vector) << "\nnodes=" << res.nodes << "\n";
  }
  return 0;
}

int cmd_tensor(const std::string& path, unsigned k, std::size_t ceiling, const std::string& out) {
  Lattice l = parse_lattice(read_text_file(path));
  if (k == 0) fail_param("--k must be at least 1");
  Lattice t = tensor_power(l, k, ceiling);
  write_text_file(out, format_lattice(t));
  std::cout << "ambient=" << t.ambient << " rank=" << t.rank << "\n";
  return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed) {
  std::vector<SuiteResult> results;
  if (suite == "all") {
    for (const std::string& name : suite_names()) results.push_back(run_suite_by_name(name, seed));
  } else {
    results.push_back(run_suite_by_name(suite, seed));
  }
  bool all_pass = true;
  for (const SuiteResult& r : results) {
    for (const std::string& line : r.lines) std::cout << line << "\n";
    std::cout << r.summary << "\n";
    all_pass = all_pass && r.pass;
  }
  std::cout << "VERDICT=" << (all_pass ? "PASS" : "FAIL") << "\n";
  return all_pass ? 0 : 1;
}

int cmd_plotdata(const std::string& selector, std::uint64_t seed) {
  if (selector.empty()) {
    std::cout << "# gap-vs-k: k\tlambda_sq_upper\tthreshold_sq\n";
    std::cout << "# nodes-vs-dim: dim\tnodes\tlambda_sq\n";
    return 0;
  }
  if (selector == "gap-vs-k") {
    PipelineRun run = planted_yes_run(seed);
    SvpResult base = lambda1_exact(run.base);
    std::cout << "# k\tlambda_sq_upper\tthreshold_sq\n";
    Int lam = base.norm_sq;
    Int thr_sq = numerator(run.instance.threshold) * numerator(run.instance.threshold);
    std::cout << 1 << "\t" << lam << "\t" << thr_sq << "\n";
    // k = 2 upper bound: the tensor square of a shortest base vector.
    std::cout << 2 << "\t" << lam * lam << "\t" << thr_sq * thr_sq << "\n";
    return 0;
  }
  if (selector == "nodes-vs-dim") {
    std::cout << "# dim\tnodes\tlambda_sq\n";
    for (std::size_t r = 2; r <= 8; ++r) {
      Rng rng = Rng::stream(seed + r, stage::suite);
      IntMatrix b(r, r);
      while (true) {
        for (Int& e : b.a) e = Int(rng.range(-5, 5));
        if (has_full_column_rank(b)) break;
      }
      SvpResult res = lambda1_exact(Lattice::from_basis(b));
      std::cout << r << "\t" << res.nodes << "\t" << res.norm_sq << "\n";
    }
    return 0;
  }
  fail_param("unknown plotdata selector: " + selector);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lattice gap amplification toolkit"};
  app.require_subcommand(1);

  ReduceOpts ro;
  CLI::App* reduce = app.add_subcommand("reduce", "run the reduction pipeline");
  reduce->add_option("input", ro.input, "set-cover instance file");
  reduce->add_option("--gen", ro.gen_kind, "generate an instance instead: yes or no");
  reduce->add_option("--seed", ro.seed, "rng seed")->required();
  reduce->add_option("--k", ro.k, "tensor exponent");
  reduce->add_option("--d", ro.d, "distance parameter");
  reduce->add_option("--N", ro.n_code, "code length");
  reduce->add_option("--eta", ro.eta, "density, e.g. 1/2");
  reduce->add_option("--q-override", ro.q_override, "explicit sparsification prime");
  reduce->add_option("--out-instance", ro.out_instance, "gap instance output path");
  reduce->add_option("--out-certificate", ro.out_certificate, "certificate output path");
  reduce->add_option("--out-intermediate", ro.out_intermediate, "intermediate lattice output path");
  reduce->add_option("--out-base", ro.out_base, "sparsified base lattice output path");
  reduce->add_option("--out-setcover", ro.out_setcover, "generated instance output path");

  std::string svp_path;
  std::string svp_p = "2";
  std::size_t svp_ceiling = gapamp::kDefaultEnumCeiling;
  CLI::App* svp = app.add_subcommand("svp", "exact shortest vector");
  svp->add_option("basis", svp_path, "lattice file")->required();
  svp->add_option("--p", svp_p, "norm: positive integer or inf");
  svp->add_option("--ceiling", svp_ceiling, "enumeration rank ceiling");

  std::string tensor_path;
  std::string tensor_out = "tensor.txt";
  unsigned tensor_k = 2;
  std::size_t tensor_ceiling = 0;
  CLI::App* tensor_cmd = app.add_subcommand("tensor", "k-fold tensor power of a lattice");
  tensor_cmd->add_option("basis", tensor_path, "lattice file")->required();
  tensor_cmd->add_option("--k", tensor_k, "tensor exponent");
  tensor_cmd->add_option("--ceiling", tensor_ceiling, "rank ceiling, 0 disables");
  tensor_cmd->add_option("--out", tensor_out, "output path");

  std::string verify_suite;
  std::uint64_t verify_seed = 0;
  CLI::App* verify = app.add_subcommand("verify", "run a property suite");
  verify->add_option("--suite", verify_suite, "suite name or all")->required();
  verify->add_option("--seed", verify_seed, "rng seed")->required();

  std::string plot_selector;
  std::uint64_t plot_seed = 0;
  CLI::App* plot = app.add_subcommand("plotdata", "emit tab-separated statistics");
  plot->add_option("selector", plot_selector, "gap-vs-k or nodes-vs-dim; empty lists headers");
  plot->add_option("--seed", plot_seed, "rng seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (reduce->parsed()) return cmd_reduce(ro);
    if (svp->parsed()) return cmd_svp(svp_path, svp_p, svp_ceiling);
    if (tensor_cmd->parsed()) return cmd_tensor(tensor_path, tensor_k, tensor_ceiling, tensor_out);
    if (verify->parsed()) return cmd_verify(verify_suite, verify_seed);
    if (plot->parsed()) return cmd_plotdata(plot_selector, plot_seed);
  } catch (const gapamp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case gapamp::ErrorKind::parameter:
        return 2;
      case gapamp::ErrorKind::resource:
        return 3;
      case gapamp::ErrorKind::internal:
        return 4;
    }
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 2;
}
