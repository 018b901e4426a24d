#include "latiso/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iomanip>

#include "CLI11.hpp"
#include "latiso/gaussian.hpp"
#include "latiso/instances.hpp"
#include "latiso/io.hpp"
#include "latiso/lip.hpp"

namespace latiso {

namespace {

std::string format_vec(std::span<const Int> v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].get_str();
  }
  return s + "]";
}

std::string format_mat(const IntMat& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) s += ", ";
    s += format_vec(m.row(i));
  }
  return s + "]";
}

Rat rational_arg(const std::string& text, const char* name) {
  try {
    return parse_rational(text);
  } catch (const ParseError&) {
    throw ParseError(std::string(name) + " expects an integer or p/q, got '" + text + "'");
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw ParseError("cannot write " + path);
  f << text;
}

// Shared flags; every subcommand gets --json and --seed.
struct Common {
  bool json = false;
  std::uint64_t seed = 1;
  std::string eps = "1/2";
  bool low_memory = false;

  LipOptions lip() const {
    LipOptions o;
    o.seed = seed;
    o.eps = rational_arg(eps, "--eps");
    if (o.eps <= 0 || o.eps > 1) throw PreconditionViolated("--eps must lie in (0, 1]");
    o.low_memory = low_memory;
    return o;
  }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_flag("--json", c.json, "machine-readable output");
  cmd->add_option("--seed", c.seed, "random seed");
}

void add_lip_flags(CLI::App* cmd, Common& c) {
  add_common(cmd, c);
  cmd->add_option("--eps", c.eps, "isolation failure probability, p/q");
  cmd->add_flag("--low-memory", c.low_memory, "re-enumerate instead of storing vector sets");
}

void print_isoms(std::ostream& out, const IsoSet& s, bool json, bool count_only) {
  if (json) {
    Json j{{"count", s.isoms.size()}};
    if (!count_only) {
      Json a = Json::array();
      for (const auto& u : s.isoms) a.push_back(to_json(u));
      j["isoms"] = a;
    }
    out << emit(j);
    return;
  }
  out << s.isoms.size() << "\n";
  if (count_only) return;
  for (const auto& u : s.isoms) out << format_mat(u) << "\n";
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact lattice isomorphism and lattice toolkit", "latiso"};
  app.require_subcommand(1);
  std::function<int()> action;
  Common c;
  std::string file_a, file_b, bound_sq, delta = "3/4", out_a, out_b;
  bool count_only = false;
  std::size_t rounds = 100, gen_n = 2;
  long skew = 2;

  auto bind = [&](CLI::App* cmd, std::function<int()> f) {
    cmd->callback([&action, f] { action = f; });
  };
  auto one_file = [&](CLI::App* cmd) { cmd->add_option("A", file_a, "lattice file")->required(); };
  auto two_files = [&](CLI::App* cmd) {
    one_file(cmd);
    cmd->add_option("B", file_b, "lattice file")->required();
  };

  CLI::App* lip = app.add_subcommand("lip", "lattice isomorphism");
  lip->require_subcommand(1);

  CLI::App* decide = lip->add_subcommand("decide", "print ISOMORPHIC or NOT_ISOMORPHIC");
  two_files(decide);
  add_lip_flags(decide, c);
  bind(decide, [&] {
    Lattice a = read_lattice(file_a), b = read_lattice(file_b);
    std::optional<IntMat> u = find_isomorphism(a, b, c.lip());
    if (c.json)
      out << emit(Json{{"isomorphic", u.has_value()},
                       {"certificate", u ? to_json(*u) : Json(nullptr)}});
    else
      out << (u ? "ISOMORPHIC" : "NOT_ISOMORPHIC") << "\n";
    return u ? 0 : 1;
  });

  CLI::App* isoms = lip->add_subcommand("isoms", "all U with A = Uᵀ·B·U");
  two_files(isoms);
  add_lip_flags(isoms, c);
  isoms->add_flag("--count-only", count_only, "print only the number of isomorphisms");
  bind(isoms, [&] {
    print_isoms(out, lip_general(read_lattice(file_a), read_lattice(file_b), c.lip()), c.json,
                count_only);
    return 0;
  });

  CLI::App* auts = lip->add_subcommand("auts", "automorphism group");
  one_file(auts);
  add_lip_flags(auts, c);
  auts->add_flag("--count-only", count_only, "print only the group order");
  bind(auts, [&] {
    print_isoms(out, automorphisms(read_lattice(file_a), c.lip()), c.json, count_only);
    return 0;
  });

  CLI::App* svp = app.add_subcommand("svp", "a shortest nonzero vector");
  one_file(svp);
  add_common(svp, c);
  bind(svp, [&] {
    Lattice l = read_lattice(file_a);
    CoeffVec v = shortest_vector(l);
    Rat nrm = l.norm_sq(v);
    if (c.json)
      out << emit(Json{{"vector", to_json(v.coords)}, {"norm_sq", to_json(nrm)}});
    else
      out << format_vec(v.coords) << " " << to_string(nrm) << "\n";
    return 0;
  });

  CLI::App* en = app.add_subcommand("enum", "all nonzero vectors with norm² <= bound");
  one_file(en);
  add_common(en, c);
  en->add_option("--bound-sq", bound_sq, "squared norm bound, p/q")->required();
  bind(en, [&] {
    Lattice l = read_lattice(file_a);
    std::vector<ShortVector> vs = enumerate_with_norms(l, rational_arg(bound_sq, "--bound-sq"));
    if (c.json) {
      Json a = Json::array();
      for (const auto& v : vs)
        a.push_back(Json{{"vector", to_json(v.v.coords)}, {"norm_sq", to_json(v.norm_sq)}});
      out << emit(Json{{"count", vs.size()}, {"vectors", a}});
    } else {
      out << vs.size() << "\n";
      for (const auto& v : vs) out << format_vec(v.v.coords) << " " << to_string(v.norm_sq) << "\n";
    }
    return 0;
  });

  auto reduced_output = [&](const ReducedBasis& r) {
    if (c.json)
      out << emit(Json{{"lattice", lattice_to_json(r.lattice)}, {"transform", to_json(r.transform)}});
    else
      out << emit(lattice_to_json(r.lattice));
    return 0;
  };

  CLI::App* kz = app.add_subcommand("kz", "Korkine-Zolotarev reduced Gram");
  one_file(kz);
  add_common(kz, c);
  bind(kz, [&] { return reduced_output(kz_basis(read_lattice(file_a))); });

  CLI::App* reduce = app.add_subcommand("reduce", "LLL reduced Gram");
  one_file(reduce);
  add_common(reduce, c);
  reduce->add_option("--delta", delta, "Lovász parameter, p/q in (1/4, 1)");
  bind(reduce, [&] {
    Rat d = rational_arg(delta, "--delta");
    if (d <= Rat(1, 4) || d >= 1) throw PreconditionViolated("--delta must lie in (1/4, 1)");
    return reduced_output(lll_reduce(read_lattice(file_a), d));
  });

  CLI::App* du = app.add_subcommand("dual", "Gram of the dual lattice");
  one_file(du);
  add_common(du, c);
  bind(du, [&] {
    out << emit(lattice_to_json(dual(read_lattice(file_a))));
    return 0;
  });

  CLI::App* minima = app.add_subcommand("minima", "squared successive minima");
  one_file(minima);
  add_common(minima, c);
  bind(minima, [&] {
    RatVec m = successive_minima_sq(read_lattice(file_a));
    if (c.json) {
      Json a = Json::array();
      for (const auto& q : m) a.push_back(to_json(q));
      out << emit(Json{{"minima_sq", a}});
    } else {
      for (const auto& q : m) out << to_string(q) << "\n";
    }
    return 0;
  });

  CLI::App* isolate = app.add_subcommand("isolate", "isolating dual vector and its chain");
  one_file(isolate);
  add_common(isolate, c);
  isolate->add_option("--eps", c.eps, "failure probability, p/q");
  bind(isolate, [&] {
    Lattice l = read_lattice(file_a);
    IsolatingDual d = find_isolating_dual(l, c.lip());
    Rat nrm = dual_norm_sq(dual(l).gram(), d.w);
    if (c.json) {
      Json chain = Json::array();
      for (const auto& v : d.chain.vectors) chain.push_back(to_json(v));
      out << emit(Json{{"w", to_json(d.w.coords)}, {"norm_sq", to_json(nrm)}, {"chain", chain}});
    } else {
      out << "w " << format_vec(d.w.coords) << " " << to_string(nrm) << "\n";
      for (const auto& v : d.chain.vectors) out << "chain " << format_vec(v) << "\n";
    }
    return 0;
  });

  CLI::App* szk = app.add_subcommand("szk", "simulate the non-isomorphism proof system");
  two_files(szk);
  add_common(szk, c);
  szk->add_option("--rounds", rounds, "number of rounds")->check(CLI::PositiveNumber);
  bind(szk, [&] {
    Lattice a = read_lattice(file_a), b = read_lattice(file_b);
    SzkParams p = szk_params(a, b);
    std::vector<Transcript> ts = szk_run(a, b, rounds, c.seed);
    std::size_t accepted = std::count_if(ts.begin(), ts.end(), [](const Transcript& t) { return t.accept; });
    Rat rate(static_cast<unsigned long>(accepted), static_cast<unsigned long>(rounds));
    rate.canonicalize();
    std::ostringstream width;
    width << std::setprecision(17) << p.s;
    if (c.json) {
      out << emit(Json{{"rounds", rounds},
                       {"accepted", accepted},
                       {"rate", to_json(rate)},
                       {"width", width.str()},
                       {"samples", p.samples}});
    } else {
      out << "rounds " << rounds << "\naccepted " << accepted << "\nrate " << to_string(rate)
          << " (" << std::fixed << std::setprecision(4) << rate.get_d() << ")\nwidth "
          << width.str() << "\nsamples " << p.samples << "\n";
    }
    return 0;
  });

  CLI::App* gen = app.add_subcommand("gen", "random isomorphic pair (A, UᵀAU)");
  add_common(gen, c);
  gen->add_option("--n", gen_n, "rank")->check(CLI::Range(1, 64));
  gen->add_option("--skew", skew, "column-operation multipliers lie in [-skew, skew]")
      ->check(CLI::NonNegativeNumber);
  gen->add_option("--out-a", out_a, "write A here instead of stdout");
  gen->add_option("--out-b", out_b, "write B here instead of stdout");
  bind(gen, [&] {
    InstancePair p = random_yes_pair(gen_n, c.seed, skew);
    if (out_a.empty() != out_b.empty())
      throw PreconditionViolated("--out-a and --out-b go together");
    if (!out_a.empty()) {
      write_file(out_a, emit(lattice_to_json(p.a)));
      write_file(out_b, emit(lattice_to_json(p.b)));
    } else {
      out << emit(Json{{"a", lattice_to_json(p.a)},
                       {"b", lattice_to_json(p.b)},
                       {"transform", to_json(p.transform)}});
    }
    return 0;
  });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  try {
    return action();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace latiso
