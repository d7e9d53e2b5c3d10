#pragma once

// Command-line front end: `picmonoid <group> <command> [options]`.
// run() never prints; it returns the payload, a human rendering and the
// exit code, so the tool and the tests share one code path.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "picmonoid/serialization.hpp"

namespace picmonoid {

struct CommandResult {
  bool ok = true;
  Json payload = Json::object();
  std::vector<std::string> diagnostics;
  std::string text;  ///< human-readable rendering
  bool json = false;  ///< --json was given
  int exit_code = 0;
};

namespace cli_detail {

inline std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

inline Integer parse_integer(const std::string& text) {
  Rational q = parse_rational(text);
  if (denominator(q) != 1) throw Error(ErrorCode::ParseError, "'" + text + "' is not an integer");
  return numerator(q);
}

inline std::vector<Integer> parse_integers(const std::string& text) {
  std::vector<Integer> out;
  for (const auto& s : split(text, ',')) out.push_back(parse_integer(s));
  return out;
}

inline std::int64_t small_integer(const std::string& text) {
  Integer n = parse_integer(text);
  if (n < std::numeric_limits<std::int64_t>::min() / 4 || n > std::numeric_limits<std::int64_t>::max() / 4)
    throw Error(ErrorCode::InvalidArgument, "'" + text + "' is out of range");
  return static_cast<std::int64_t>(n);
}

/// A JSON argument given inline or as @path.
inline Json parse_json_arg(const std::string& text) {
  std::string body = text;
  if (!text.empty() && text[0] == '@') {
    std::ifstream in(text.substr(1));
    if (!in) throw Error(ErrorCode::ParseError, "cannot open " + text.substr(1));
    std::stringstream buf;
    buf << in.rdbuf();
    body = buf.str();
  }
  try {
    return Json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed JSON: ") + e.what());
  }
}

inline std::map<Integer, int> parse_caps(const std::string& text) {
  std::map<Integer, int> caps;
  for (const auto& item : split(text, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) throw Error(ErrorCode::ParseError, "cap '" + item + "' must be prime:exponent");
    caps[parse_integer(item.substr(0, colon))] = static_cast<int>(small_integer(item.substr(colon + 1)));
  }
  return caps;
}

inline Place parse_place(const std::string& text) {
  if (text == "inf" || text == "infinity") return Archimedean{};
  Integer p = parse_integer(text);
  require_prime(p);
  return p;
}

inline std::string zeros_path(const std::string& given) {
  if (!given.empty()) return given;
  if (const char* env = std::getenv("PICMONOID_ZEROS"); env && *env) return env;
#ifdef PICMONOID_DATA_DIR
  return std::string(PICMONOID_DATA_DIR) + "/zeros100.txt";
#else
  throw Error(ErrorCode::UsageError, "no zero table: pass --zeros or set PICMONOID_ZEROS");
#endif
}

inline Json rational_list(const std::vector<Rational>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(to_string(x));
  return out;
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

/// Handlers fill in payload and text; the dispatcher handles errors.
using Handler = std::function<void(CommandResult&)>;

struct Leaf {
  CLI::App* app;
  Handler handler;
};

}  // namespace cli_detail

inline CommandResult run(const std::vector<std::string>& args) {
  using namespace cli_detail;
  CommandResult result;
  CLI::App app{"Exact arithmetic for rank-one subgroups of Q, adeles, Picard classes, covers and the explicit formula",
               "picmonoid"};
  app.require_subcommand(1);
  app.add_flag("--json", result.json, "emit JSON instead of text");
  app.fallthrough();
  std::vector<Leaf> leaves;

  auto group = [&](const char* name, const char* about) {
    auto* g = app.add_subcommand(name, about);
    g->require_subcommand(1);
    g->fallthrough();
    return g;
  };
  auto leaf = [&](CLI::App* g, const char* name, const char* about) {
    auto* l = g->add_subcommand(name, about);
    leaves.push_back({l, {}});
    return l;
  };
  auto handle = [&](Handler h) { leaves.back().handler = std::move(h); };

  // Option storage shared by the leaves; only one leaf runs per call.
  std::string d1, d2, a1, a2, x, y, c1, c2, f1, f2, primes, caps, kernel, units, tf, zeros, data, places, table, xs,
      levels;
  std::string bound = "1", lambda = "1", n_text = "1", k_text, p_text, time_text = "0", modulus = "1";
  std::int64_t quadratic = 0, below = 0, shift = 0;
  int prec = 8;
  std::size_t n_zeros = 100;
  double lambda_real = 1.0, delta = 1e-8;
  bool complement = false;

  // divisor
  auto* div = group("divisor", "arithmetic divisors and their groups of sections");
  auto* l = leaf(div, "add", "sum of two divisors");
  l->add_option("--d1", d1, "divisor, e.g. '{2:3, 5:inf; default:0}'")->required();
  l->add_option("--d2", d2, "divisor")->required();
  handle([&](CommandResult& r) {
    auto d = divisor_add(parse_divisor(d1), parse_divisor(d2));
    r.payload = to_json(d);
    r.text = to_text(d);
  });
  l = leaf(div, "equiv", "linear equivalence with positive witness");
  l->add_option("--d1", d1)->required();
  l->add_option("--d2", d2)->required();
  handle([&](CommandResult& r) {
    auto w = classes_equivalent(parse_divisor(d1), parse_divisor(d2));
    r.payload = Json{{"equivalent", w.has_value()}, {"witness", w ? Json(to_string(*w)) : Json(nullptr)}};
    r.text = w ? "equivalent, witness " + to_string(*w) : "not equivalent";
  });
  l = leaf(div, "normalize", "S-locus and principal witness");
  l->add_option("--d", d1)->required();
  handle([&](CommandResult& r) {
    auto nf = class_normalize(parse_divisor(d1));
    r.payload = Json{{"s", to_json(nf.s)}, {"witness", to_string(nf.witness)}};
    r.text = "S = " + nf.s.str() + ", witness " + to_string(nf.witness);
  });
  l = leaf(div, "sections", "membership of x in L(D)");
  l->add_option("--d", d1)->required();
  l->add_option("--x", x, "rational")->required();
  handle([&](CommandResult& r) {
    bool in = sections_contains(parse_divisor(d1), parse_rational(x));
    r.payload = Json{{"x", to_string(parse_rational(x))}, {"contains", in}};
    r.text = in ? "true" : "false";
  });

  // adele
  auto* ad = group("adele", "truncated adeles");
  l = leaf(ad, "mul", "componentwise product");
  l->add_option("--a", a1, "adele JSON or @file")->required();
  l->add_option("--b", a2, "adele JSON or @file")->required();
  handle([&](CommandResult& r) {
    r.payload = to_json(adele_multiply(adele_from_json(parse_json_arg(a1)), adele_from_json(parse_json_arg(a2))));
    r.text = r.payload.dump();
  });
  l = leaf(ad, "todivisor", "divisor of valuations");
  l->add_option("--a", a1)->required();
  handle([&](CommandResult& r) {
    auto d = adele_to_divisor(adele_from_json(parse_json_arg(a1)).finite);
    r.payload = to_json(d);
    r.text = to_text(d);
  });
  l = leaf(ad, "xqclass", "class in the Picard monoid");
  l->add_option("--a", a1)->required();
  handle([&](CommandResult& r) {
    auto c = xq_class(adele_from_json(parse_json_arg(a1)));
    r.payload = to_json(c);
    r.text = "(" + c.s_locus().str() + ", " + to_string(c.scale()) + ")";
  });
  l = leaf(ad, "pair", "the Q/Z pairing psi(a)(q)");
  l->add_option("--a", a1)->required();
  l->add_option("--q", x)->required();
  handle([&](CommandResult& r) {
    auto v = psi_pair(adele_from_json(parse_json_arg(a1)).finite, parse_rational(x));
    r.payload = Json{{"value", to_string(v.value())}};
    r.text = to_string(v.value());
  });

  // pic
  auto* pic = group("pic", "Picard and Jacobian classes");
  auto class_text = [](const PicClass& c) { return "(" + c.s_locus().str() + ", " + to_string(c.scale()) + ")"; };
  l = leaf(pic, "product", "tensor product of classes");
  l->add_option("--c1", c1, "class JSON {\"s\": [...], \"scale\": \"n/d\"}")->required();
  l->add_option("--c2", c2)->required();
  handle([&](CommandResult& r) {
    auto c = pic_product(pic_from_json(parse_json_arg(c1)), pic_from_json(parse_json_arg(c2)));
    r.payload = to_json(c);
    r.text = class_text(c);
  });
  l = leaf(pic, "equal", "class equality");
  l->add_option("--c1", c1)->required();
  l->add_option("--c2", c2)->required();
  handle([&](CommandResult& r) {
    bool eq = pic_equal(pic_from_json(parse_json_arg(c1)), pic_from_json(parse_json_arg(c2)));
    r.payload = Json{{"equal", eq}};
    r.text = eq ? "true" : "false";
  });
  l = leaf(pic, "spectrum", "value spectrum below a bound with denominator caps");
  l->add_option("--c", c1)->required();
  l->add_option("--bound", bound, "rational bound");
  l->add_option("--caps", caps, "p:k,... for every prime of S");
  handle([&](CommandResult& r) {
    auto s = value_spectrum_sample(pic_from_json(parse_json_arg(c1)), parse_rational(bound), parse_caps(caps));
    r.payload = Json{{"step", to_string(s.step())}, {"count", s.count().str()}, {"bound", to_string(s.bound())}};
    if (s.count() <= 10000) {
      auto els = s.elements();
      r.payload["elements"] = rational_list(els);
      std::vector<std::string> parts;
      for (const auto& e : els) parts.push_back(to_string(e));
      r.text = "{" + join(parts, ", ") + "}";
    } else {
      r.diagnostics.push_back("more than 10000 elements; listing omitted");
      r.text = "step " + to_string(s.step()) + ", " + s.count().str() + " nonzero elements";
    }
  });
  l = leaf(pic, "unitball", "sections of norm at most 1");
  l->add_option("--d", d1)->required();
  l->add_option("--lambda", lambda);
  handle([&](CommandResult& r) {
    auto xs_ = unit_ball_sections(parse_divisor(d1), parse_rational(lambda));
    r.payload = Json{{"count", xs_.size()}, {"sections", rational_list(xs_)}};
    std::vector<std::string> parts;
    for (const auto& e : xs_) parts.push_back(to_string(e));
    r.text = "{" + join(parts, ", ") + "}";
  });
  auto jac_text = [](const JacClass& j) {
    return "(" + j.s_locus.str() + ", " + (j.arch == ArchFlag::Infinite ? "infinite" : "finite") + ")";
  };
  l = leaf(pic, "jac", "projection to the Jacobian");
  l->add_option("--c", c1)->required();
  handle([&](CommandResult& r) {
    auto j = jac_project(pic_from_json(parse_json_arg(c1)));
    r.payload = to_json(j);
    r.text = jac_text(j);
  });
  l = leaf(pic, "theta", "Abel-Jacobi image of a prime set");
  l->add_option("--primes", primes, "comma-separated primes");
  l->add_flag("--complement", complement, "all primes except the given ones");
  handle([&](CommandResult& r) {
    auto ps = parse_integers(primes);
    std::set<Integer> set(ps.begin(), ps.end());
    auto j = abel_jacobi_set(complement ? PrimeSet::all_except(set) : PrimeSet::of(set));
    r.payload = to_json(j);
    r.text = jac_text(j);
  });

  // frame
  auto* fr = group("frame", "framed divisors and their roots");
  l = leaf(fr, "tensor", "tensor product of frames");
  l->add_option("--f1", f1, "frame JSON (adele JSON plus \"tau\")")->required();
  l->add_option("--f2", f2)->required();
  handle([&](CommandResult& r) {
    r.payload = to_json(frame_tensor(frame_from_json(parse_json_arg(f1)), frame_from_json(parse_json_arg(f2))));
    r.text = r.payload.dump();
  });
  l = leaf(fr, "root", "root value at level n, or a CSV table");
  l->add_option("--f", f1)->required();
  l->add_option("--n", n_text, "level");
  l->add_option("--x", x, "group element");
  l->add_option("--table", table, "write CSV rows level,x,numerator to this path");
  l->add_option("--levels", levels, "levels for --table");
  l->add_option("--xs", xs, "elements for --table");
  handle([&](CommandResult& r) {
    Frame f = frame_from_json(parse_json_arg(f1));
    if (!table.empty()) {
      std::ofstream out(table);
      if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + table);
      out << "level,x,numerator\n";
      std::size_t rows = 0;
      for (const auto& lv : parse_integers(levels.empty() ? n_text : levels))
        for (const auto& s : split(xs.empty() ? x : xs, ',')) {
          Rational xv = parse_rational(s);
          Rational v = root_eval(f, lv, xv).value();
          out << lv << ',' << to_string(xv) << ',' << numerator(v * lv) << '\n';
          ++rows;
        }
      r.payload = Json{{"table", table}, {"rows", rows}};
      r.text = "wrote " + std::to_string(rows) + " rows to " + table;
      return;
    }
    if (x.empty()) throw Error(ErrorCode::UsageError, "--x is required without --table");
    Integer n = parse_integer(n_text);
    auto v = root_eval(f, n, parse_rational(x));
    r.payload = Json{{"level", n.str()}, {"x", to_string(parse_rational(x))}, {"value", to_string(v.value())}};
    r.text = to_string(v.value());
  });
  l = leaf(fr, "dualcheck", "levelwise product identity for the tensor of two roots");
  l->add_option("--f1", f1)->required();
  l->add_option("--f2", f2)->required();
  l->add_option("--n", n_text)->required();
  l->add_option("--x", x)->required();
  l->add_option("--y", y)->required();
  handle([&](CommandResult& r) {
    Frame a = frame_from_json(parse_json_arg(f1)), b = frame_from_json(parse_json_arg(f2));
    Integer n = parse_integer(n_text);
    Rational xv = parse_rational(x), yv = parse_rational(y);
    bool holds = root_tensor_check(a, b, n, xv, yv);
    r.payload = Json{{"holds", holds}, {"product", to_string(root_eval(frame_tensor(a, b), n, xv * yv).value())}};
    r.text = holds ? "true" : "false";
  });
  l = leaf(fr, "torsion", "torsion of the dual group");
  l->add_option("--f", f1)->required();
  l->add_option("--p", p_text, "prime for an element order");
  l->add_option("--x", x, "element of Q_p for the order");
  handle([&](CommandResult& r) {
    auto d = dual_torsion(frame_from_json(parse_json_arg(f1)));
    r.payload = to_json(d);
    r.text = "support " + d.support_primes.str();
    if (!p_text.empty() && !x.empty()) {
      auto order = torsion_element_order(d, parse_integer(p_text), parse_rational(x));
      r.payload["order"] = order.str();
      r.text += ", order " + order.str();
    }
  });

  // cover
  auto* cv = group("cover", "abelian covers from (Z/mZ)^x quotients");
  auto cover_options = [&](CLI::App* a) {
    a->add_option("--modulus", modulus, "m");
    a->add_option("--kernel", kernel, "comma-separated kernel generators");
    a->add_option("--quadratic", quadratic, "build the cover of Q(sqrt d) instead");
  };
  auto make_cover = [&]() {
    if (quadratic != 0) return quadratic_cover(quadratic);
    std::vector<std::int64_t> gens;
    for (const auto& s : split(kernel, ',')) gens.push_back(small_integer(s));
    return cover_from_character(small_integer(modulus), gens);
  };
  l = leaf(cv, "build", "group table of the cover");
  cover_options(l);
  handle([&](CommandResult& r) {
    auto c = make_cover();
    r.payload = to_json(c);
    r.text = "m = " + std::to_string(c.modulus()) + ", |G| = " + std::to_string(c.group_order());
  });
  l = leaf(cv, "frobenius", "Frobenius class of an unramified prime");
  cover_options(l);
  l->add_option("--p", p_text)->required();
  handle([&](CommandResult& r) {
    auto c = make_cover();
    auto e = frobenius(c, parse_integer(p_text));
    r.payload = Json{{"p", p_text}, {"frobenius", e.representative}, {"order", c.order(e)}};
    r.text = std::to_string(e.representative);
  });
  l = leaf(cv, "split", "decomposition table p, frobenius, components, degree");
  cover_options(l);
  l->add_option("--primes", primes, "comma-separated primes");
  l->add_option("--below", below, "all primes below this bound");
  handle([&](CommandResult& r) {
    auto c = make_cover();
    std::vector<Integer> ps = parse_integers(primes);
    for (std::int64_t p = 2; p < below; ++p)
      if (is_prime(Integer(p))) ps.emplace_back(p);
    Json rows = Json::array();
    r.text = "p\tfrobenius\tcomponents\tdegree";
    for (const auto& p : ps) {
      require_prime(p);
      if (c.modulus() % p == 0) {
        r.diagnostics.push_back("skipped ramified prime " + p.str());
        continue;
      }
      auto e = frobenius(c, p);
      auto fd = fiber_decomposition(c, p);
      rows.push_back(Json{{"p", detail::integer_json(p)}, {"frobenius", e.representative},
                          {"components", fd.components}, {"degree", fd.degree}});
      r.text += "\n" + p.str() + "\t" + std::to_string(e.representative) + "\t" + std::to_string(fd.components) +
                "\t" + std::to_string(fd.degree);
    }
    r.payload = Json{{"rows", rows}};
  });
  l = leaf(cv, "ramified", "ramified places");
  cover_options(l);
  handle([&](CommandResult& r) {
    auto rs = ramified_set(make_cover());
    r.payload = to_json(rs);
    std::vector<std::string> parts;
    for (const auto& p : rs.primes.members()) parts.push_back(p.str());
    parts.push_back("inf");
    r.text = "{" + join(parts, ", ") + "}";
  });
  l = leaf(cv, "torus", "fundamental-domain representative in the mapping torus");
  l->add_option("--p", p_text)->required();
  l->add_option("--time", time_text, "time as a rational multiple of log p");
  l->add_option("--units", units, "v:u,... unit components away from p");
  l->add_option("--prec", prec, "digits of each unit component");
  l->add_option("--shift", shift, "exponent of p in the remaining components");
  handle([&](CommandResult& r) {
    Integer p = parse_integer(p_text);
    TorusPoint::Units us;
    for (const auto& item : split(units, ',')) {
      auto colon = item.find(':');
      if (colon == std::string::npos) throw Error(ErrorCode::ParseError, "unit '" + item + "' must be v:u");
      Integer v = parse_integer(item.substr(0, colon));
      us.emplace(v, TruncatedPadic::make(v, 0, parse_integer(item.substr(colon + 1)), prec));
    }
    auto t = torus_normalize(TorusPoint::make(p, std::move(us), static_cast<long>(shift), parse_rational(time_text)));
    r.payload = to_json(t);
    r.text = r.payload.dump();
  });

  // weil
  auto* wl = group("weil", "explicit formula for the Riemann zeta function");
  auto tf_option = [&](CLI::App* a) {
    a->add_option("--tf", tf, "test function, e.g. gaussian:T=5,sigma=0.1,center=0,omega=0")->required();
  };
  l = leaf(wl, "balance", "spectral side against the sum of local terms");
  tf_option(l);
  l->add_option("--zeros", zeros, "zero table (default $PICMONOID_ZEROS)");
  l->add_option("--n", n_zeros, "number of zeros");
  l->add_option("--data", data, "write 'N residual tailBound' rows for N = 0..n");
  handle([&](CommandResult& r) {
    auto g = TestFunction::parse(tf);
    auto table_ = ZeroTable::load(zeros_path(zeros));
    auto report = balance(g, table_, n_zeros);
    r.payload = to_json(report);
    r.payload["testFunction"] = g.str();
    if (!data.empty()) {
      std::ofstream out(data);
      if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + data);
      out << "# N residual tailBound\n";
      for (const auto& pt : residual_curve(g, table_, n_zeros))
        out << pt.zeros_used << ' ' << format_double(pt.residual) << ' ' << format_double(pt.tail_bound) << '\n';
      r.diagnostics.push_back("wrote residual curve to " + data);
    }
    r.text = "spectral " + format_double(report.spectral_side) + "\ngeometric " + format_double(report.geometric_side) +
             "\nresidual " + format_double(report.residual) + "\ntail bound " + format_double(report.tail_bound);
  });
  l = leaf(wl, "localterm", "local term at one place");
  tf_option(l);
  l->add_option("--place", p_text, "inf or a prime")->required();
  handle([&](CommandResult& r) {
    auto g = TestFunction::parse(tf);
    Place v = parse_place(p_text);
    double w = std::holds_alternative<Archimedean>(v) ? local_term_arch(g).value : local_term_finite(g, std::get<Integer>(v));
    r.payload = Json{{"place", place_name(v)}, {"value", format_double(w)}};
    r.text = format_double(w);
  });
  l = leaf(wl, "zerosverify", "certify each zero by a sign change of the Hardy function");
  l->add_option("--zeros", zeros);
  l->add_option("--delta", delta, "half-width of the sign-change bracket");
  handle([&](CommandResult& r) {
    auto certs = verify_zeros(ZeroTable::load(zeros_path(zeros)), delta);
    Json list = Json::array();
    std::size_t good = 0;
    for (const auto& c : certs) {
      good += c.certified;
      list.push_back(Json{{"ordinate", format_double(c.ordinate)}, {"modulus", format_double(c.modulus)}, {"certified", c.certified}});
    }
    r.payload = Json{{"count", certs.size()}, {"certified", good}, {"zeros", list}};
    r.text = std::to_string(good) + " of " + std::to_string(certs.size()) + " zeros certified";
  });
  l = leaf(wl, "semilocal", "divergent and finite parts of the semilocal trace");
  tf_option(l);
  l->add_option("--places", places, "comma-separated places, must include inf")->required();
  l->add_option("--lambda", lambda_real, "cutoff");
  handle([&](CommandResult& r) {
    std::vector<Place> ps;
    for (const auto& s : split(places, ',')) ps.push_back(parse_place(s));
    auto s = semilocal_rhs(TestFunction::parse(tf), ps, lambda_real);
    r.payload = Json{{"divergent", format_double(s.divergent)}, {"finite", format_double(s.finite)}};
    r.text = "divergent " + format_double(s.divergent) + "\nfinite " + format_double(s.finite);
  });

  auto fail = [&](ErrorCode code, const std::string& message, const std::string& help = {}) {
    result.ok = false;
    result.payload = Json{{"status", "error"}, {"error", to_string(code)}, {"message", message}};
    result.text = "error [" + std::string(to_string(code)) + "]: " + message + (help.empty() ? "" : "\n\n" + help);
    result.exit_code = exit_code(code);
  };

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    CLI::App* target = &app;
    for (CLI::App* sub = target; sub;) {
      auto subs = sub->get_subcommands();
      target = sub;
      sub = subs.empty() ? nullptr : subs.front();
    }
    result.text = target->help();
    result.payload = Json{{"status", "help"}, {"help", result.text}};
    return result;
  } catch (const CLI::ParseError& e) {
    CLI::App* target = &app;
    for (auto* sub = &app; sub;) {
      auto subs = sub->get_subcommands();
      target = sub;
      sub = subs.empty() ? nullptr : subs.front();
    }
    fail(ErrorCode::UsageError, e.what(), target->help());
    return result;
  }

  for (auto& lf : leaves) {
    if (!lf.app->parsed()) continue;
    try {
      lf.handler(result);
    } catch (const Error& e) {
      fail(e.code(), e.message());
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::ParseError, e.what());
    }
    return result;
  }
  fail(ErrorCode::UsageError, "no command given", app.help());
  return result;
}

/// What the tool writes to stdout.
inline std::string render(const CommandResult& r) {
  if (r.json) return r.payload.dump(2) + "\n";
  return r.text + "\n";
}

}  // namespace picmonoid
