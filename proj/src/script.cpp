#include "credal/script.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <sstream>

#include "credal/errors.hpp"
#include "credal/measures.hpp"
#include "credal/oracle.hpp"

namespace credal {

namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

// First word and the rest.
std::pair<std::string, std::string> split_word(const std::string& line) {
  std::size_t i = 0;
  while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
  return {line.substr(0, i), trim(std::string_view(line).substr(i))};
}

// `upper P(r)` sugar: an envelope argument written P(...) covering the whole
// rest is unwrapped to the sentence inside.
std::string strip_prob_wrapper(const std::string& text) {
  std::string t = trim(text);
  if (t.size() < 3 || t[0] != 'P') return text;
  std::size_t i = 1;
  while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i]))) ++i;
  if (i >= t.size() || t[i] != '(') return text;
  int depth = 0;
  for (std::size_t j = i; j < t.size(); ++j) {
    if (t[j] == '(') ++depth;
    if (t[j] == ')' && --depth == 0)
      return j + 1 == t.size() ? t.substr(i + 1, j - i - 1) : text;
  }
  return text;
}

std::string json_rational(const Rational& r) { return format_rational(r); }

nlohmann::json distribution_json(const ProbFunction& p) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = 0; i < p.masses().size(); ++i)
    if (p.mass(i) != 0)
      out.push_back(std::to_string(i) + ":" + format_rational(p.mass(i)));
  return out;
}

nlohmann::json atoms_json(const Language& lang, const Event& atoms) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = atoms.find_first(); i != Event::npos; i = atoms.find_next(i))
    out.push_back(lang.atom_name(i));
  return out;
}

ProbFunction rationalize_masses(const Language& lang, const std::vector<double>& masses) {
  std::vector<Rational> out(masses.size());
  Rational sum = 0;
  std::size_t largest = 0;
  bool snapped_all = true;
  for (std::size_t i = 0; i < masses.size(); ++i) {
    auto s = snap_to_rational(masses[i], 1'000'000);
    if (!s || std::fabs(rational_to_double(*s) - masses[i]) > 1e-7) {
      snapped_all = false;
      break;
    }
    out[i] = *s;
    sum += out[i];
    if (masses[i] > masses[largest]) largest = i;
  }
  if (!snapped_all) {
    sum = 0;
    for (std::size_t i = 0; i < masses.size(); ++i) {
      out[i] = rational_from_double(masses[i]);
      if (out[i] < 0) out[i] = 0;
      sum += out[i];
      if (masses[i] > masses[largest]) largest = i;
    }
  }
  out[largest] += 1 - sum;
  return ProbFunction::from_masses(lang, std::move(out));
}

}  // namespace

std::vector<std::pair<std::string, std::string>> split_weighted_pairs(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (true) {
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= n) break;
    std::size_t start = i;
    int depth = 0;
    std::size_t colon = std::string::npos;
    for (; i < n; ++i) {
      if (text[i] == '(') ++depth;
      else if (text[i] == ')') --depth;
      else if (text[i] == ':' && depth == 0) {
        colon = i;
        break;
      }
    }
    if (colon == std::string::npos)
      throw ParseError("expected 'sentence:weight'", start);
    std::size_t wstart = ++i;
    while (i < n && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    out.emplace_back(trim(text.substr(start, colon - start)),
                     text.substr(wstart, i - wstart));
  }
  if (out.empty()) throw ParseError("expected at least one 'sentence:weight' pair", 0);
  return out;
}

Session::Session(Language lang, ScriptOptions opts)
    : lang_(std::move(lang)), opts_(std::move(opts)) {
  rebuild();
}

void Session::rebuild() {
  dist_.reset();
  conditioned_.reset();
  model_ = PartialModel::from_constraints(ConstraintSet(lang_, generic_));
  for (const auto& op : specifics_) apply(op);
}

void Session::apply(const SpecificOp& op) {
  switch (op.kind) {
    case SpecificOp::Kind::Condition: {
      const Sentence& s = op.pairs.front().first;
      if (dist_)
        dist_ = condition(*dist_, s);
      else if (conditioned_)
        conditioned_ = condition_extended(*conditioned_, s);
      else
        conditioned_ = condition_extended(*model_, s);
      return;
    }
    case SpecificOp::Kind::Jeffrey:
      if (!dist_)
        throw PreconditionError(
            "'jeffrey' needs point mode; run 'collapse maxent' first");
      dist_ = jeffrey_binary(*dist_, op.pairs.front().first, op.pairs.front().second);
      return;
    case SpecificOp::Kind::JeffreyPartition:
      if (!dist_)
        throw PreconditionError(
            "'jeffrey-partition' needs point mode; run 'collapse maxent' first");
      dist_ = jeffrey_general(*dist_, op.pairs);
      return;
    case SpecificOp::Kind::Mce: {
      if (!dist_)
        throw PreconditionError("'mce' needs point mode; run 'collapse maxent' first");
      ConstraintSet s(lang_, op.constraints);
      dist_ = rationalize_masses(lang_, mce_update(*dist_, s, opts_.mce).masses);
      return;
    }
    case SpecificOp::Kind::Collapse: {
      if (dist_) throw PreconditionError("'collapse maxent' while already in point mode");
      dist_ = collapse_target();
      conditioned_.reset();
      return;
    }
  }
}

ProbFunction Session::collapse_target() const {
  ConstraintSet base =
      conditioned_ ? as_constraints(*conditioned_, opts_.vertex_letter_cap) : model_->base();
  if (auto exact = maxent_rationalized(base, opts_.mce)) return *exact;
  return rationalize_masses(lang_, maxent(base, opts_.mce).masses);
}

void Session::constrain_entry(LinearConstraint c) {
  generic_.push_back(std::move(c));
  if (!specifics_.empty())
    warnings_.push_back(
        "generic entry 'constrain " + generic_.back().source_text +
        "' after specific entries; applied to the prior model and the specific "
        "entries were replayed");
  rebuild();
}

void Session::condition_entry(const Sentence& s) {
  SpecificOp op{SpecificOp::Kind::Condition, {{s, Rational(0)}}, {}};
  apply(op);
  specifics_.push_back(std::move(op));
}

void Session::jeffrey_entry(const Sentence& s, const Rational& weight) {
  SpecificOp op{SpecificOp::Kind::Jeffrey, {{s, weight}}, {}};
  apply(op);
  specifics_.push_back(std::move(op));
}

void Session::jeffrey_partition_entry(
    const std::vector<std::pair<Sentence, Rational>>& pairs) {
  SpecificOp op{SpecificOp::Kind::JeffreyPartition, pairs, {}};
  apply(op);
  specifics_.push_back(std::move(op));
}

void Session::mce_entry(const std::vector<LinearConstraint>& cs) {
  SpecificOp op{SpecificOp::Kind::Mce, {}, cs};
  apply(op);
  specifics_.push_back(std::move(op));
}

void Session::collapse_maxent_entry() {
  SpecificOp op{SpecificOp::Kind::Collapse, {}, {}};
  apply(op);
  specifics_.push_back(std::move(op));
}

Sentence Session::parse_query_sentence(const std::string& rest) const {
  return parse_sentence(strip_prob_wrapper(rest), lang_);
}

nlohmann::json Session::query(const std::string& expr) {
  auto [word, rest] = split_word(trim(expr));
  if (word == "lower" || word == "upper") {
    if (rest.empty()) throw ParseError("'" + word + "' needs a sentence", 0);
    Sentence s = parse_query_sentence(rest);
    if (dist_) return json_rational(eval(*dist_, s));
    LpSense sense = word == "lower" ? LpSense::Min : LpSense::Max;
    std::vector<Rational> obj(lang_.atom_count(), Rational(0));
    Event ev = models(lang_, s);
    for (std::size_t i = ev.find_first(); i != Event::npos; i = ev.find_next(i)) obj[i] = 1;
    return json_rational(conditioned_ ? envelope(*conditioned_, obj, sense)
                                      : envelope(*model_, obj, sense));
  }
  if (word == "accepted") {
    if (rest.empty()) throw ParseError("'accepted' needs a sentence", 0);
    Sentence s = parse_query_sentence(rest);
    if (dist_) return eval(*dist_, s) == 1;
    return conditioned_ ? accepted(*conditioned_, s) : accepted(*model_, s);
  }
  if (word == "entails") {
    if (rest.empty()) throw ParseError("'entails' needs a constraint", 0);
    LinearConstraint c = parse_constraint(rest, lang_);
    if (dist_) return c.holds_at(dist_->masses());
    return conditioned_ ? entails(*conditioned_, c) : entails(model_->base(), c);
  }
  if (word == "top") {
    if (dist_) return atoms_json(lang_, top(*dist_).atoms());
    return atoms_json(lang_,
                      (conditioned_ ? top(*conditioned_) : top(*model_)).atoms());
  }
  if (word == "uncertainty") {
    if (dist_) {
      std::vector<double> m(dist_->masses().size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = rational_to_double(dist_->mass(i));
      return entropy_bits(m);
    }
    if (conditioned_) {
      PartialModel mat = PartialModel::from_constraints(
          as_constraints(*conditioned_, opts_.vertex_letter_cap));
      return uncertainty(mat, opts_.mce);
    }
    return uncertainty(*model_, opts_.mce);
  }
  if (word == "ignorance") {
    if (dist_) return 0.0;  // a singleton has no envelope gaps
    if (conditioned_) {
      PartialModel mat = PartialModel::from_constraints(
          as_constraints(*conditioned_, opts_.vertex_letter_cap));
      return ignorance(mat, opts_.vertex_letter_cap);
    }
    return ignorance(*model_, opts_.vertex_letter_cap);
  }
  if (word == "dist") {
    if (!dist_) throw PreconditionError("'dist' is only available in point mode");
    return distribution_json(*dist_);
  }
  throw ParseError("unknown query '" + word + "'", 0);
}

std::optional<Rational> Session::oracle_deviation(const std::string& expr) {
  auto [word, rest] = split_word(trim(expr));
  if ((word != "lower" && word != "upper") || dist_) return std::nullopt;
  if (lang_.letter_count() > opts_.vertex_letter_cap) return std::nullopt;
  Sentence s = parse_query_sentence(rest);
  Event ev = models(lang_, s);
  const ConstraintSet& base = conditioned_ ? conditioned_->base() : model_->base();

  bool first = true;
  Rational best = 0;
  for (const auto& v : oracle::vertices(base, opts_.vertex_letter_cap)) {
    Rational value;
    if (conditioned_) {
      Rational pe = eval_event(v, conditioned_->evidence());
      if (pe == 0) continue;
      value = eval_event(v, ev & conditioned_->evidence()) / pe;
    } else {
      value = eval_event(v, ev);
    }
    if (first || (word == "lower" ? value < best : value > best)) best = value;
    first = false;
  }
  if (first) return std::nullopt;

  std::vector<Rational> obj(lang_.atom_count(), Rational(0));
  for (std::size_t i = ev.find_first(); i != Event::npos; i = ev.find_next(i)) obj[i] = 1;
  LpSense sense = word == "lower" ? LpSense::Min : LpSense::Max;
  Rational lp = conditioned_ ? envelope(*conditioned_, obj, sense)
                             : envelope(*model_, obj, sense);
  Rational dev = lp - best;
  return dev < 0 ? -dev : dev;
}

namespace {

Language parse_letters_line(const std::string& rest, std::size_t letter_cap) {
  std::vector<std::string> names;
  std::istringstream iss(rest);
  std::string word;
  while (iss >> word) names.push_back(word);
  return Language::make(std::move(names), letter_cap);
}

[[noreturn]] void rethrow_with_line(const std::string& name, std::size_t line) {
  std::string prefix = name + ":" + std::to_string(line) + ": ";
  try {
    throw;
  } catch (const ParseError& e) {
    throw ParseError(prefix + e.what(), e.position);
  } catch (const InfeasibleError& e) {
    throw InfeasibleError(prefix + e.what());
  } catch (const NullEvidenceError& e) {
    throw NullEvidenceError(prefix + e.what());
  } catch (const PreconditionError& e) {
    throw PreconditionError(prefix + e.what());
  } catch (const CapError& e) {
    throw CapError(prefix + e.what());
  } catch (const NoFiniteObjectiveError& e) {
    throw NoFiniteObjectiveError(prefix + e.what());
  } catch (const Error& e) {
    throw Error(prefix + e.what());
  }
}

}  // namespace

nlohmann::json run_script(std::istream& in, const std::string& name,
                          const ScriptOptions& opts) {
  std::optional<Session> session;
  nlohmann::json ledger = nlohmann::json::array();
  nlohmann::json answers = nlohmann::json::object();
  nlohmann::json oracle_check;
  std::size_t checked = 0;
  Rational max_dev = 0;

  std::string raw;
  std::size_t line_no = 0, index = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto [word, rest] = split_word(line);
    try {
      if (!session) {
        if (word != "letters")
          throw ParseError("script must start with a 'letters' header", 0);
        session.emplace(parse_letters_line(rest, opts.letter_cap), opts);
        continue;
      }
      nlohmann::json entry{{"index", index}, {"kind", word}, {"text", line}};
      if (word == "constrain") {
        entry["tag"] = "generic";
        session->constrain_entry(parse_constraint(rest, session->language()));
      } else if (word == "condition") {
        entry["tag"] = "specific";
        session->condition_entry(parse_sentence(rest, session->language()));
      } else if (word == "jeffrey") {
        entry["tag"] = "specific";
        auto pairs = split_weighted_pairs(rest);
        if (pairs.size() != 1)
          throw ParseError("'jeffrey' takes exactly one sentence:weight pair", 0);
        session->jeffrey_entry(parse_sentence(pairs[0].first, session->language()),
                               parse_rational(pairs[0].second));
      } else if (word == "jeffrey-partition") {
        entry["tag"] = "specific";
        std::vector<std::pair<Sentence, Rational>> pairs;
        for (const auto& [stext, wtext] : split_weighted_pairs(rest))
          pairs.emplace_back(parse_sentence(stext, session->language()),
                             parse_rational(wtext));
        session->jeffrey_partition_entry(pairs);
      } else if (word == "mce") {
        entry["tag"] = "specific";
        std::vector<LinearConstraint> cs;
        std::istringstream parts(rest);
        std::string part;
        while (std::getline(parts, part, ';')) {
          part = trim(part);
          if (part.empty()) continue;
          cs.push_back(parse_constraint(part, session->language()));
        }
        if (cs.empty()) throw ParseError("'mce' needs at least one constraint", 0);
        session->mce_entry(cs);
      } else if (word == "collapse") {
        if (trim(rest) != "maxent")
          throw ParseError("only 'collapse maxent' is supported", 0);
        entry["tag"] = "specific";
        session->collapse_maxent_entry();
      } else if (word == "query") {
        if (rest.empty()) throw ParseError("'query' needs an expression", 0);
        nlohmann::json value = session->query(rest);
        entry["answer"] = value;
        entry["text"] = rest;
        answers[rest] = value;
        if (opts.oracle_check) {
          if (auto dev = session->oracle_deviation(rest)) {
            ++checked;
            if (*dev > max_dev) max_dev = *dev;
          }
        }
      } else {
        throw ParseError("unknown script entry '" + word + "'", 0);
      }
      ledger.push_back(std::move(entry));
      ++index;
    } catch (...) {
      rethrow_with_line(name, line_no);
    }
  }
  if (!session) throw ParseError(name + ": empty script (no 'letters' header)", 0);

  nlohmann::json report{{"language", session->language().letters()},
                        {"ledger", std::move(ledger)},
                        {"warnings", session->warnings()},
                        {"answers", std::move(answers)}};
  if (opts.oracle_check)
    report["oracle_check"] = {{"checked", checked},
                              {"max_deviation", format_rational(max_dev)}};
  return report;
}

nlohmann::json run_script_text(const std::string& text, const std::string& name,
                               const ScriptOptions& opts) {
  std::istringstream in(text);
  return run_script(in, name, opts);
}

ConstraintSet load_model(std::istream& in, const std::string& name, std::size_t letter_cap) {
  std::optional<Language> lang;
  std::vector<LinearConstraint> cs;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    try {
      if (!lang) {
        auto [word, rest] = split_word(line);
        if (word != "letters")
          throw ParseError("model file must start with a 'letters' header", 0);
        lang = parse_letters_line(rest, letter_cap);
        continue;
      }
      cs.push_back(parse_constraint(line, *lang));
    } catch (...) {
      rethrow_with_line(name, line_no);
    }
  }
  if (!lang) throw ParseError(name + ": empty model file (no 'letters' header)", 0);
  return ConstraintSet(*lang, std::move(cs));
}

}  // namespace credal
