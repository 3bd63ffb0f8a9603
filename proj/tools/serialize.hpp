#pragma once

// JSON and CSV encodings for CLI payloads. Exact values (rationals, integer
// coefficients, digit sequences) travel as strings or integers so that every
// payload parses back to equal values; doubles use nlohmann's shortest
// round-trip form.

#include <json.hpp>

#include "univoque/dims.hpp"

namespace univoque::io {

using Json = nlohmann::ordered_json;

inline constexpr int kDecimalDigits = 20;

// ---------------------------------------------------------------- input

/// Base inputs: "dec:5.828", "poly:[c0,c1,...];(lo,hi]", "alpha:pre(per)" or a
/// plain rational such as "7/2".
inline Base parse_base(const std::string& text, Alphabet alphabet) {
  auto rational = [](const std::string& s) {
    Rational r;
    if (!parse_rational(s, r)) throw Error(ErrorKind::ParseError, "bad number '" + s + "'");
    return r;
  };
  if (text.rfind("dec:", 0) == 0) return Base::rational(rational(text.substr(4)));
  if (text.rfind("alpha:", 0) == 0) {
    std::string seq = text.substr(6);
    if (seq.size() >= 2 && seq.front() == '"' && seq.back() == '"') seq = seq.substr(1, seq.size() - 2);
    return solve_base(parse_seq(seq, alphabet), alphabet);
  }
  if (text.rfind("poly:", 0) == 0) {
    const std::string body = text.substr(5);
    const auto open = body.find('['), close = body.find(']');
    const auto semi = body.find(';', close == std::string::npos ? 0 : close);
    if (open != 0 || close == std::string::npos || semi == std::string::npos)
      throw Error(ErrorKind::ParseError, "poly must look like poly:[c0,c1,...];(lo,hi]");
    std::vector<BigInt> coeffs;
    std::string list = body.substr(1, close - 1);
    std::size_t start = 0;
    while (start <= list.size()) {
      std::size_t end = list.find(',', start);
      if (end == std::string::npos) end = list.size();
      Rational c = rational(list.substr(start, end - start));
      if (c.get_den() != 1) throw Error(ErrorKind::ParseError, "coefficients must be integers");
      coeffs.push_back(c.get_num());
      start = end + 1;
    }
    std::string range = body.substr(semi + 1);
    const auto comma = range.find(',');
    if (range.size() < 5 || range.front() != '(' || range.back() != ']' || comma == std::string::npos)
      throw Error(ErrorKind::ParseError, "interval must look like (lo,hi]");
    return Base::algebraic(Polynomial(std::move(coeffs)), rational(range.substr(1, comma - 1)),
                           rational(range.substr(comma + 1, range.size() - comma - 2)));
  }
  return Base::rational(rational(text));
}

// ---------------------------------------------------------------- exact values

inline Json integer_json(const BigInt& x) {
  if (x.fits_slong_p()) return Json(x.get_si());
  return Json(x.get_str());
}

inline BigInt integer_from_json(const Json& j) {
  if (j.is_number_integer()) return BigInt(j.get<long>());
  return BigInt(j.get<std::string>());
}

inline Rational rational_from_json(const Json& j) {
  Rational r;
  if (!parse_rational(j.get<std::string>(), r)) throw Error(ErrorKind::ParseError, "bad rational in payload");
  return r;
}

inline std::string poly_text(const Polynomial& f) {
  std::string out = "[";
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) out += (i ? "," : "") + f.coeffs[i].get_str();
  return out + "]";
}

inline Json base_json(const Base& q) {
  Json j;
  if (q.is_rational()) {
    j["kind"] = "rational";
    j["value"] = to_string(q.value());
  } else {
    j["kind"] = "algebraic";
    Json coeffs = Json::array();
    for (const BigInt& c : q.polynomial().coeffs) coeffs.push_back(integer_json(c));
    j["poly"] = coeffs;
    j["lo"] = to_string(q.low());
    j["hi"] = to_string(q.high());
  }
  j["decimal"] = q.to_decimal(kDecimalDigits);
  return j;
}

inline Base base_from_json(const Json& j) {
  if (j.at("kind") == "rational") return Base::rational(rational_from_json(j.at("value")));
  std::vector<BigInt> coeffs;
  for (const Json& c : j.at("poly")) coeffs.push_back(integer_from_json(c));
  return Base::algebraic(Polynomial(std::move(coeffs)), rational_from_json(j.at("lo")),
                         rational_from_json(j.at("hi")));
}

/// poly:[…];(lo,hi] text that parse_base accepts back.
inline std::string base_input_text(const Base& q) {
  if (q.is_rational()) return to_string(q.value());
  return "poly:" + poly_text(q.polynomial()) + ";(" + to_string(q.low()) + "," + to_string(q.high()) + "]";
}

inline Json word_json(const Word& w, Alphabet alphabet) { return format_word(w, alphabet); }

// ---------------------------------------------------------------- results

inline Json entropy_json(const EntropyResult& h) {
  return Json{{"h_lo", h.h_lo},
              {"h_hi", h.h_hi},
              {"norm_lo", h.norm_lo},
              {"norm_hi", h.norm_hi},
              {"method", h.method == EntropyMethod::Spectral ? "spectral" : "bracket"},
              {"n_used", h.n_used},
              {"empty_language", h.empty_language}};
}

inline EntropyResult entropy_from_json(const Json& j) {
  EntropyResult h;
  h.h_lo = j.at("h_lo").get<double>();
  h.h_hi = j.at("h_hi").get<double>();
  h.norm_lo = j.at("norm_lo").get<double>();
  h.norm_hi = j.at("norm_hi").get<double>();
  h.method = j.at("method") == "spectral" ? EntropyMethod::Spectral : EntropyMethod::Bracket;
  h.n_used = j.at("n_used").get<std::size_t>();
  h.empty_language = j.at("empty_language").get<bool>();
  return h;
}

inline Json plateau_json(const PlateauInterval& p, Alphabet alphabet) {
  return Json{{"generator", format_word(p.generator, alphabet)},
              {"kind", kind_name(p.kind)},
              {"level", p.level},
              {"alpha_left", format_seq(p.alpha_left, alphabet)},
              {"alpha_right", format_seq(p.alpha_right, alphabet)},
              {"p_left", base_json(p.p_left)},
              {"p_right", base_json(p.p_right)},
              {"entropy", entropy_json(p.entropy)}};
}

inline PlateauInterval plateau_from_json(const Json& j, Alphabet alphabet) {
  return {parse_word(j.at("generator").get<std::string>(), alphabet),
          parse_seq(j.at("alpha_left").get<std::string>(), alphabet),
          parse_seq(j.at("alpha_right").get<std::string>(), alphabet),
          base_from_json(j.at("p_left")),
          base_from_json(j.at("p_right")),
          j.at("kind") == "irreducible" ? PlateauKind::Irreducible : PlateauKind::StarIrreducible,
          j.at("level").get<unsigned>(),
          entropy_from_json(j.at("entropy"))};
}

inline Json class_json(const SequenceClass& c) {
  return Json{{"in_V", c.in_v}, {"in_U_closure", c.in_u_closure}, {"in_U", c.in_u}};
}

inline Json interval_json(const Interval& i) { return Json{{"lo", i.lo}, {"hi", i.hi}}; }

inline Json approx_json(const RealApprox& r) {
  return Json{{"lo", to_string(r.lo)},
              {"hi", to_string(r.hi)},
              {"lo_decimal", Base::rational(r.lo).to_decimal(kDecimalDigits)},
              {"hi_decimal", Base::rational(r.hi).to_decimal(kDecimalDigits)}};
}

inline Json locate_json(const LocateResult& r, Alphabet alphabet) {
  Json j;
  if (const auto* p = std::get_if<PlateauInterval>(&r.where)) {
    j["where"] = "plateau";
    j["plateau"] = plateau_json(*p, alphabet);
  } else if (std::holds_alternative<FirstPlateau>(r.where)) {
    j["where"] = "first_plateau";
  } else {
    j["where"] = "bifurcation";
    j["certainty"] = certainty_name(std::get<Bifurcation>(r.where).certainty);
  }
  j["prefix"] = format_word(r.prefix, alphabet);
  j["m"] = r.m;
  return j;
}

inline Json dims_json(const DimResult& d) {
  Json box = Json::array();
  for (const BoxEstimate& e : d.box) {
    Json row{{"n", e.n},
             {"delta", e.delta},
             {"count_lo", integer_json(e.count_lo)},
             {"count_hi", integer_json(e.count_hi)},
             {"ratio_lo", std::isnan(e.ratio_lo) ? Json(nullptr) : Json(e.ratio_lo)},
             {"ratio_hi", std::isnan(e.ratio_hi) ? Json(nullptr) : Json(e.ratio_hi)}};
    if (e.u_count) row["u_count"] = integer_json(*e.u_count);
    box.push_back(std::move(row));
  }
  return Json{{"M", d.M},
              {"q", base_json(d.q)},
              {"dim_H", interval_json(d.dim_H)},
              {"exact_expansion", d.exact_expansion},
              {"box", box}};
}

inline Json edim_json(const EDimBound& e) {
  return Json{{"N", e.N},
              {"base", e.base},
              {"argument", integer_json(e.numerator_argument)},
              {"symbolic", e.symbolic()},
              {"value", e.value},
              {"deficit", e.deficit}};
}

// ---------------------------------------------------------------- CSV

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string csv_double(double x) {
  // Shortest round-trip form, independent of the locale.
  return Json(x).dump();
}

inline std::string plateau_csv_header() { return "generator,kind,level,pL_poly,pL_dec,pR_poly,pR_dec,H_norm"; }

inline std::string plateau_csv_row(const PlateauInterval& p, Alphabet alphabet) {
  auto poly = [](const Base& q) {
    return q.is_rational() ? to_string(q.value()) : base_input_text(q);
  };
  return csv_quote(format_word(p.generator, alphabet)) + "," + kind_name(p.kind) + "," + std::to_string(p.level) +
         "," + csv_quote(poly(p.p_left)) + "," + p.p_left.to_decimal(kDecimalDigits) + "," +
         csv_quote(poly(p.p_right)) + "," + p.p_right.to_decimal(kDecimalDigits) + "," +
         csv_double(p.entropy.norm_mid());
}

}  // namespace univoque::io
