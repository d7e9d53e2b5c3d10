#pragma once

// JSON forms of the library's value types. Big integers, rationals and
// extended exponents travel as strings so nothing is lost; small primes are
// written as JSON numbers for readability and read back from either form.

#include <charconv>
#include <string>

#include <json.hpp>

#include "picmonoid/adeles.hpp"
#include "picmonoid/covers.hpp"
#include "picmonoid/divisors.hpp"
#include "picmonoid/explicit_formula.hpp"
#include "picmonoid/frames.hpp"
#include "picmonoid/picard.hpp"

namespace picmonoid {

using Json = nlohmann::ordered_json;

namespace detail {

inline Error bad_json(const std::string& what) { return Error(ErrorCode::ParseError, "JSON: " + what); }

inline Json integer_json(const Integer& n) {
  if (n >= std::numeric_limits<std::int64_t>::min() && n <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(n);
  return n.str();
}

inline Integer integer_from(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    Rational q = parse_rational(j.get<std::string>());
    if (denominator(q) != 1) throw bad_json("expected an integer, got " + j.get<std::string>());
    return numerator(q);
  }
  throw bad_json("expected an integer");
}

inline Rational rational_from(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw bad_json("expected a rational string");
}

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw bad_json(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace detail

/// Shortest decimal form that reads back as the same double.
inline std::string format_double(double x) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

inline Json to_json(const PrimeSet& s) {
  Json members = Json::array();
  for (const auto& p : s.members()) members.push_back(detail::integer_json(p));
  if (s.complemented()) return Json{{"complement", members}};
  return members;
}

inline PrimeSet prime_set_from_json(const Json& j) {
  std::set<Integer> primes;
  const Json& list = j.is_object() ? detail::field(j, "complement") : j;
  if (!list.is_array()) throw detail::bad_json("prime set must be a list or {\"complement\": [...]}");
  for (const auto& p : list) primes.insert(detail::integer_from(p));
  return j.is_object() ? PrimeSet::all_except(std::move(primes)) : PrimeSet::of(std::move(primes));
}

inline Json to_json(const ArithmeticDivisor& d) {
  Json entries = Json::object();
  for (const auto& [p, n] : d.explicit_entries()) entries[p.str()] = n.str();
  return Json{{"entries", entries}, {"default", d.default_is_inf() ? "inf" : "0"}};
}

inline ArithmeticDivisor divisor_from_json(const Json& j) {
  ArithmeticDivisor::Entries entries;
  for (const auto& [key, value] : detail::field(j, "entries").items()) {
    if (!value.is_string()) throw detail::bad_json("divisor exponents are strings");
    entries.emplace(detail::integer_from(Json(key)), ExtInt::parse(value.get<std::string>()));
  }
  const Json& def = detail::field(j, "default");
  if (def != "0" && def != "inf") throw detail::bad_json("default must be \"0\" or \"inf\"");
  return ArithmeticDivisor::make(std::move(entries), def == "inf");
}

inline Json to_json(const TruncatedPadic& x) {
  if (x.is_zero()) return Json{{"v", "inf"}};
  return Json{{"v", x.finite_valuation()}, {"unit", x.unit().str()}, {"prec", x.precision()}};
}

inline TruncatedPadic padic_from_json(const Integer& p, const Json& j) {
  const Json& v = detail::field(j, "v");
  if (v == "inf") return TruncatedPadic::zero(p);
  if (!v.is_number_integer()) throw detail::bad_json("valuation must be an integer or \"inf\"");
  return TruncatedPadic::make(p, v.get<long>(), detail::integer_from(detail::field(j, "unit")),
                              detail::field(j, "prec").get<int>());
}

inline Json finite_adele_json(const FiniteAdele& a) {
  Json comps = Json::object();
  for (const auto& [p, x] : a.components()) comps[p.str()] = to_json(x);
  return comps;
}

inline Json to_json(const Adele& a) {
  Json j{{"finite", finite_adele_json(a.finite)}, {"inf", to_string(a.infinite)}};
  if (a.finite.cofactor() != 1) j["cofactor"] = to_string(a.finite.cofactor());
  return j;
}

inline Adele adele_from_json(const Json& j) {
  FiniteAdele::Components comps;
  for (const auto& [key, value] : detail::field(j, "finite").items()) {
    Integer p = detail::integer_from(Json(key));
    comps.emplace(p, padic_from_json(p, value));
  }
  Rational cofactor = j.contains("cofactor") ? detail::rational_from(j.at("cofactor")) : Rational(1);
  Rational inf = j.contains("inf") ? detail::rational_from(j.at("inf")) : Rational(1);
  return Adele{FiniteAdele::make(std::move(comps), cofactor), inf, std::nullopt};
}

inline Json to_json(const PicClass& c) {
  return Json{{"s", to_json(c.s_locus())}, {"scale", to_string(c.scale())}, {"degenerate", c.degenerate()}};
}

inline PicClass pic_from_json(const Json& j) {
  PicClass c = PicClass::make(prime_set_from_json(detail::field(j, "s")), detail::rational_from(detail::field(j, "scale")));
  if (j.contains("degenerate") && j.at("degenerate").get<bool>() != c.degenerate())
    throw detail::bad_json("degenerate flag disagrees with scale");
  return c;
}

inline Json to_json(const JacClass& c) {
  return Json{{"s", to_json(c.s_locus)}, {"arch", c.arch == ArchFlag::Infinite ? "infinite" : "finite"}};
}

inline JacClass jac_from_json(const Json& j) {
  const Json& arch = detail::field(j, "arch");
  if (arch != "finite" && arch != "infinite") throw detail::bad_json("arch must be \"finite\" or \"infinite\"");
  return {prime_set_from_json(detail::field(j, "s")), arch == "infinite" ? ArchFlag::Infinite : ArchFlag::Finite};
}

inline Json to_json(const Frame& f) {
  Json j{{"finite", finite_adele_json(f.multiplier())}};
  if (f.multiplier().cofactor() != 1) j["cofactor"] = to_string(f.multiplier().cofactor());
  j["tau"] = to_string(f.tau());
  return j;
}

inline Frame frame_from_json(const Json& j) {
  Adele a = adele_from_json(j);
  return Frame(a.finite, j.contains("tau") ? detail::rational_from(j.at("tau")) : Rational(1));
}

inline Json to_json(const DualTorsionDescriptor& d) {
  Json shifts = Json::object();
  for (const auto& [p, n] : d.local_shift) shifts[p.str()] = n.str();
  return Json{{"support", to_json(d.support_primes)}, {"shift", shifts}};
}

inline Json to_json(const CoverSpec& c) {
  Json kernel = Json::array(), reps = Json::array();
  for (auto k : c.kernel()) kernel.push_back(k);
  for (auto r : c.representatives()) reps.push_back(r);
  return Json{{"modulus", c.modulus()}, {"kernel", kernel}, {"order", c.group_order()},
              {"elements", reps}, {"table", c.table()}};
}

inline CoverSpec cover_from_json(const Json& j) {
  return CoverSpec::make(detail::field(j, "modulus").get<std::int64_t>(),
                         detail::field(j, "kernel").get<std::vector<std::int64_t>>());
}

inline Json to_json(const RamifiedPlaces& r) { return Json{{"primes", to_json(r.primes)}, {"archimedean", r.archimedean}}; }

inline Json to_json(const TorusPoint& t) {
  Json units = Json::object();
  for (const auto& [v, x] : t.units()) units[v.str()] = Json{{"unit", x.unit().str()}, {"prec", x.precision()}};
  return Json{{"prime", detail::integer_json(t.prime())}, {"units", units}, {"shift", t.shift()}, {"time", to_string(t.time())}};
}

inline TorusPoint torus_from_json(const Json& j) {
  TorusPoint::Units units;
  for (const auto& [key, value] : detail::field(j, "units").items()) {
    Integer v = detail::integer_from(Json(key));
    units.emplace(v, TruncatedPadic::make(v, 0, detail::integer_from(detail::field(value, "unit")),
                                          detail::field(value, "prec").get<int>()));
  }
  long shift = j.contains("shift") ? j.at("shift").get<long>() : 0;
  return TorusPoint::make(detail::integer_from(detail::field(j, "prime")), std::move(units), shift,
                          detail::rational_from(detail::field(j, "time")));
}

/// Doubles are written as shortest round-trip strings so output bytes are reproducible
/// and re-parse to the same values.
inline Json to_json(const BalanceReport& r) {
  Json places = Json::object();
  for (const auto& [v, w] : r.per_place) places[v] = format_double(w);
  return Json{{"spectralSide", format_double(r.spectral_side)},
              {"geometricSide", format_double(r.geometric_side)},
              {"perPlace", places},
              {"residual", format_double(r.residual)},
              {"zerosUsed", r.zeros_used},
              {"tailBound", format_double(r.tail_bound)}};
}

inline BalanceReport balance_from_json(const Json& j) {
  auto num = [&](const char* key) { return std::stod(detail::field(j, key).get<std::string>()); };
  BalanceReport r;
  r.spectral_side = num("spectralSide");
  r.geometric_side = num("geometricSide");
  for (const auto& [v, w] : detail::field(j, "perPlace").items()) r.per_place[v] = std::stod(w.get<std::string>());
  r.residual = num("residual");
  r.zeros_used = detail::field(j, "zerosUsed").get<std::size_t>();
  r.tail_bound = num("tailBound");
  return r;
}

}  // namespace picmonoid
