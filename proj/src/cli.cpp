#include "etaforge/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "etaforge/arith.hpp"
#include "etaforge/enumerate.hpp"
#include "etaforge/error.hpp"
#include "etaforge/orders.hpp"
#include "etaforge/phimap.hpp"
#include "etaforge/series.hpp"
#include "etaforge/zagier.hpp"

namespace etaforge::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string quotient, other;
  std::optional<std::int64_t> level, target;
  std::int64_t number = 0;
  std::int64_t weight2 = 1;
  std::optional<std::int64_t> prec;
  std::string weights;
  std::vector<std::string> cell;
  bool json = false;
};

Json exponents_json(const ExponentVector& x) {
  Json j = Json::object();
  for (const auto& [d, e] : x.entries()) j[std::to_string(d)] = e;
  return j;
}

Json orders_json(const ExponentVector& x, std::int64_t n) {
  Json j = Json::object();
  for (const auto& [t, o] : order_map(x, n)) j[std::to_string(t)] = to_string(o);
  return j;
}

Json quotient_json(const ClassifiedQuotient& q, std::int64_t n) {
  Json j;
  j["exponents"] = exponents_json(q.exponents);
  j["level"] = q.level;
  j["weight2"] = weight2(q.exponents);
  j["primitive"] = q.primitive;
  j["zagier"] = q.zagier ? Json{{"index", q.zagier->index}, {"nu", q.zagier->nu}} : Json(nullptr);
  j["orders"] = orders_json(q.exponents, n);
  return j;
}

Json with_schema(Json body) {
  Json j;
  j["schema"] = 1;
  for (auto& [k, v] : body.items()) j[k] = v;
  return j;
}

std::string weight_text(std::int64_t k2) { return to_string(make_rational(k2, 2)); }

std::int64_t level_or_own(const Options& o, const ExponentVector& x) {
  const std::int64_t n = o.level.value_or(level(x));
  if (n < 1) throw DomainError("level must be positive");
  if (n % level(x) != 0)
    throw DomainError("level " + std::to_string(level(x)) + " of " + format(x) + " does not divide " + std::to_string(n));
  return n;
}

int cmd_orders(const Options& o, std::ostream& out) {
  const ExponentVector x = parse(o.quotient);
  const std::int64_t n = level_or_own(o, x);
  if (o.json) {
    out << with_schema({{"exponents", exponents_json(x)}, {"level", n}, {"orders", orders_json(x, n)}}).dump(2) << "\n";
    return kOk;
  }
  for (const auto& [t, v] : order_map(x, n)) out << t << ": " << to_string(v) << "\n";
  return kOk;
}

int cmd_check(const Options& o, std::ostream& out) {
  const ExponentVector x = parse(o.quotient);
  const std::int64_t n = level_or_own(o, x);
  const bool holo = is_holomorphic(x, n);
  if (o.json) {
    out << with_schema({{"exponents", exponents_json(x)},
                        {"level", n},
                        {"weight2", weight2(x)},
                        {"holomorphic", holo},
                        {"orders", orders_json(x, n)}})
               .dump(2)
        << "\n";
    return kOk;
  }
  out << "quotient: " << format(x) << "\n"
      << "level: " << n << "\n"
      << "weight: " << weight_text(weight2(x)) << "\n"
      << "holomorphic: " << (holo ? "true" : "false") << "\n";
  for (const auto& [t, v] : order_map(x, n)) out << "order at 1/" << t << ": " << to_string(v) << "\n";
  return kOk;
}

int cmd_expand(const Options& o, std::ostream& out) {
  const ExponentVector x = parse(o.quotient);
  const std::int64_t p = o.prec.value_or(100);
  const PuiseuxSeries s = quotient_series(x, p);
  if (o.json) {
    Json coeffs = Json::object();
    for (std::int64_t m : s.support()) coeffs[q_exponent(m)] = s.coefficient(m).to_integer().get_str();
    out << with_schema({{"exponents", exponents_json(x)},
                        {"precision", p},
                        {"leading", q_exponent(s.leading_exponent())},
                        {"horizon", q_exponent(s.horizon())},
                        {"coefficients", coeffs}})
               .dump(2)
        << "\n";
    return kOk;
  }
  out << s.to_string() << "\n";
  for (std::int64_t m : s.support()) out << q_exponent(m) << ": " << s.coefficient(m).to_integer().get_str() << "\n";
  return kOk;
}

int cmd_enumerate(const Options& o, std::ostream& out) {
  const std::int64_t n = o.number;
  const auto found = classify(enumerate_holomorphic(n, o.weight2, SearchOptions{}), o.weight2);
  if (o.json) {
    Json list = Json::array();
    for (const auto& q : found) list.push_back(quotient_json(q, n));
    out << with_schema({{"level", n}, {"weight2", o.weight2}, {"count", found.size()}, {"quotients", list}}).dump(2)
        << "\n";
    return kOk;
  }
  for (const auto& q : found) {
    out << format(q.exponents) << "  level=" << q.level << " primitive=" << (q.primitive ? "yes" : "no");
    if (q.zagier) out << " list=" << q.zagier->index << " nu=" << q.zagier->nu;
    out << "\n";
  }
  out << "count=" << found.size() << "\n";
  return kOk;
}

int cmd_verify_zagier(const Options& o, std::ostream& out) {
  const ZagierReport r = verify_zagier(o.number, SearchOptions{});
  if (o.json) {
    Json list = Json::array();
    for (const auto& q : r.quotients) list.push_back(quotient_json(q, r.level));
    out << with_schema({{"level", r.level},
                        {"total", r.total},
                        {"primitive", r.primitive},
                        {"violations", r.violations},
                        {"quotients", list}})
               .dump(2)
        << "\n";
  } else {
    std::vector<const ClassifiedQuotient*> members;
    for (const auto& q : r.quotients) {
      if (!q.zagier)
        out << "violation: " << format(q.exponents) << "\n";
      else if (q.primitive)
        members.push_back(&q);
    }
    std::sort(members.begin(), members.end(), [](auto* a, auto* b) { return a->zagier->index < b->zagier->index; });
    for (const auto* q : members) out << "list " << q->zagier->index << ": " << format(q->exponents) << "\n";
    out << "total=" << r.total << " primitive=" << r.primitive << " violations=" << r.violations << "\n";
  }
  return r.ok() ? kOk : kViolation;
}

std::map<std::int64_t, std::int64_t> parse_weights(const std::string& text) {
  std::map<std::int64_t, std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw DomainError("weight '" + item + "' is not of the form d:a");
    try {
      out[std::stoll(item.substr(0, colon))] = std::stoll(item.substr(colon + 1));
    } catch (const std::logic_error&) {
      throw DomainError("weight '" + item + "' is not of the form d:a");
    }
  }
  return out;
}

int cmd_phi(const Options& o, std::ostream& out) {
  const ExponentVector x = parse(o.quotient);
  const std::int64_t m = level_or_own(o, x);
  const std::int64_t n = *o.target;
  const PhiWeights w = o.weights.empty() ? ones_weights(m, n) : validate_weights(m, n, parse_weights(o.weights));
  const ExponentVector y = apply_phi(x, w);
  const bool holo_in = is_holomorphic(x, m), holo_out = is_holomorphic(y, n);
  if (o.json) {
    Json weights = Json::object();
    for (const auto& [d, a] : w.values()) weights[std::to_string(d)] = a;
    out << with_schema({{"source_level", m},
                        {"target_level", n},
                        {"weights", weights},
                        {"strict", w.strict()},
                        {"input", exponents_json(x)},
                        {"image", exponents_json(y)},
                        {"input_holomorphic", holo_in},
                        {"image_holomorphic", holo_out}})
               .dump(2)
        << "\n";
  } else {
    out << "image: " << format(y) << "\n"
        << "strict: " << (w.strict() ? "true" : "false") << "\n"
        << "holomorphic: " << (holo_in ? "true" : "false") << " -> " << (holo_out ? "true" : "false") << "\n";
  }
  if (holo_in && !holo_out) throw ConsistencyError("admissible weights sent a holomorphic quotient to a non-holomorphic one");
  if (holo_in && w.strict() && !x.empty() && y.empty())
    throw ConsistencyError("strict weights sent a nonconstant holomorphic quotient to 1");
  return kOk;
}

int cmd_star(const Options& o, std::ostream& out) {
  const ExponentVector x = parse(o.quotient), y = parse(o.other);
  const ExponentVector z = star_product(x, y);
  if (o.json) {
    out << with_schema({{"exponents", exponents_json(z)}, {"level", level(z)}, {"weight2", weight2(z)}}).dump(2) << "\n";
    return kOk;
  }
  out << format(z) << "\n";
  return kOk;
}

// Units of the table labels as powers of zeta_12.
const std::array<std::pair<const char*, int>, 7> kUnits{
    {{"1", 0}, {"i", 3}, {"-1", 6}, {"-i", 9}, {"w", 4}, {"iw", 7}, {"-w", 10}}};

std::string unit_name(int k) {
  for (const auto& [name, v] : kUnits)
    if (v == k) return name;
  return "z12^" + std::to_string(k);
}

std::string substitution_text(const JtpSubstitution& s) {
  std::string power = "q";
  if (s.exponent != 24) power += s.exponent % 24 == 0 ? "^" + q_exponent(s.exponent) : "^{" + q_exponent(s.exponent) + "}";
  if (s.unit == 0) return power;
  if (s.unit == 6) return "-" + power;
  return unit_name(s.unit) + "*" + power;
}

// "<unit>:<q exponent>", e.g. "i:1/2" or "-w:3/2".
JtpSubstitution parse_substitution(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw DomainError("substitution '" + text + "' is not of the form unit:exponent");
  const std::string name = text.substr(0, colon), exp = text.substr(colon + 1);
  std::optional<int> unit;
  for (const auto& [n, v] : kUnits)
    if (name == n) unit = v;
  if (!unit) throw DomainError("unknown unit '" + name + "'; expected one of 1, i, -1, -i, w, iw, -w");
  std::int64_t num = 0, den = 1;
  try {
    const auto slash = exp.find('/');
    num = std::stoll(exp.substr(0, slash));
    if (slash != std::string::npos) den = std::stoll(exp.substr(slash + 1));
  } catch (const std::logic_error&) {
    throw DomainError("bad exponent '" + exp + "'");
  }
  if (den <= 0 || (24 * num) % den != 0) throw DomainError("exponent " + exp + " is not in (1/24)Z");
  return {*unit, 24 * num / den};
}

int cmd_jtp(const Options& o, std::ostream& out) {
  const std::int64_t p = o.prec.value_or(1200);
  if (!o.cell.empty()) {
    if (o.cell.size() != 2) throw DomainError("jtp takes either no arguments or the two substitutions x and y");
    const JtpCell c = jtp_cell(parse_substitution(o.cell[0]), parse_substitution(o.cell[1]), p);
    if (o.json) {
      out << with_schema({{"lhs", c.lhs.to_string()}, {"rhs", c.rhs.to_string()}, {"unit", c.unit}, {"shift", c.shift}})
                 .dump(2)
          << "\n";
    } else {
      out << "lhs: " << c.lhs.to_string() << "\n"
          << "rhs: " << c.rhs.to_string() << "\n"
          << "lhs = z24^" << c.unit << " q^{" << q_exponent(c.shift) << "} rhs\n";
    }
    return kOk;
  }
  Json cells = Json::array();
  bool ok = true;
  if (!o.json) out << "z = exp(2 pi i/24)\n";
  for (std::size_t i = 0; i < jtp_table().size(); ++i) {
    const auto& e = jtp_table()[i];
    const JtpTableCheck c = check_jtp_table_cell(e, p);
    ok = ok && c.scalar.has_value();
    if (o.json) {
      cells.push_back({{"cell", i + 1},
                       {"x", substitution_text(e.x)},
                       {"y", substitution_text(e.y)},
                       {"quotient", exponents_json(e.quotient)},
                       {"verified", c.scalar.has_value()},
                       {"scalar", c.scalar ? Json(c.scalar->to_string()) : Json(nullptr)},
                       {"shift", q_exponent(c.shift)}});
      continue;
    }
    out << "cell " << i + 1 << ": x=" << substitution_text(e.x) << " y=" << substitution_text(e.y) << " -> "
        << format(e.quotient);
    if (c.scalar)
      out << "  lhs = (" << c.scalar->to_string() << ") q^{" << q_exponent(c.shift) << "} eta^X\n";
    else
      out << "  FAILED\n";
  }
  if (o.json) out << with_schema({{"precision", p}, {"scalar_ring", "Z[z], z = exp(2 pi i/24)"}, {"cells", cells}, {"ok", ok}}).dump(2) << "\n";
  return ok ? kOk : kViolation;
}

int cmd_involution(const Options& o, std::ostream& out) {
  const auto pairs = involution_pairing(o.prec.value_or(600));
  if (o.json) {
    Json list = Json::array();
    for (const auto& e : pairs) list.push_back({{"from", e.from}, {"to", e.to}, {"unit", e.unit}});
    out << with_schema({{"pairs", list}}).dump(2) << "\n";
    return kOk;
  }
  for (const auto& e : pairs)
    out << e.from << " -> " << e.to << "  z48^" << e.unit << "  " << format(zagier_list()[e.from - 1]) << " -> "
        << format(zagier_list()[e.to - 1]) << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Eta quotients on Gamma_0(N)", "etaforge"};
  app.require_subcommand(1);
  Options o;

  auto add_json = [&](CLI::App* c) { c->add_flag("--json", o.json, "JSON output"); };
  auto add_quotient = [&](CLI::App* c) {
    c->add_option("quotient", o.quotient, "e.g. \"1^2 2^-1\"")->required();
  };

  auto* orders = app.add_subcommand("orders", "orders at the cusps of Gamma_0(N)");
  add_quotient(orders);
  orders->add_option("--level", o.level, "N (default: level of the quotient)");
  add_json(orders);

  auto* check = app.add_subcommand("check", "holomorphy on Gamma_0(N)");
  add_quotient(check);
  check->add_option("--level", o.level, "N (default: level of the quotient)");
  add_json(check);

  auto* expand = app.add_subcommand("expand", "q-expansion");
  add_quotient(expand);
  expand->add_option("--prec", o.prec, "number of q^(1/24) powers past the leading one (default 100)")
      ->check(CLI::PositiveNumber);
  add_json(expand);

  auto* enumerate = app.add_subcommand("enumerate", "all holomorphic quotients of a given weight on Gamma_0(N)");
  enumerate->add_option("level", o.number, "N")->required()->check(CLI::PositiveNumber);
  enumerate->add_option("--weight2", o.weight2, "twice the weight (default 1)")->check(CLI::NonNegativeNumber);
  add_json(enumerate);

  auto* verify = app.add_subcommand("verify-zagier", "check weight 1/2 on Gamma_0(N) against the list of fourteen");
  verify->add_option("level", o.number, "N")->required()->check(CLI::PositiveNumber);
  add_json(verify);

  auto* phi = app.add_subcommand("phi", "apply an admissible weight map from Gamma_0(M) to Gamma_0(N)");
  add_quotient(phi);
  phi->add_option("--level", o.level, "M (default: level of the quotient)");
  phi->add_option("--target", o.target, "N, exactly dividing M")->required();
  phi->add_option("--weights", o.weights, "d:a pairs for d | M/N, e.g. \"1:1,3:2\" (default all ones)");
  add_json(phi);

  auto* star = app.add_subcommand("star", "star product of quotients of coprime levels");
  add_quotient(star);
  star->add_option("other", o.other, "second quotient")->required();
  add_json(star);

  auto* jtp = app.add_subcommand("jtp", "triple product cells (all of the table, or one x y pair)");
  jtp->add_option("cell", o.cell, "x and y as unit:exponent, e.g. i:1/2 -w:1/2");
  jtp->add_option("--prec", o.prec, "precision in q^(1/24) powers (default 1200)")->check(CLI::PositiveNumber);
  add_json(jtp);

  auto* inv = app.add_subcommand("involution", "pairing of the list under q -> -q");
  inv->add_option("--prec", o.prec, "precision, at least 600 (default 600)")->check(CLI::PositiveNumber);
  add_json(inv);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (orders->parsed()) return cmd_orders(o, out);
    if (check->parsed()) return cmd_check(o, out);
    if (expand->parsed()) return cmd_expand(o, out);
    if (enumerate->parsed()) return cmd_enumerate(o, out);
    if (verify->parsed()) return cmd_verify_zagier(o, out);
    if (phi->parsed()) return cmd_phi(o, out);
    if (star->parsed()) return cmd_star(o, out);
    if (jtp->parsed()) return cmd_jtp(o, out);
    if (inv->parsed()) return cmd_involution(o, out);
  } catch (const ConsistencyError& e) {
    err << "violation: " << e.what() << "\n";
    return kViolation;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  err << "error: no command\n";
  return kUsage;
}

}  // namespace etaforge::cli
