#ifndef CREDAL_SCRIPT_HPP
#define CREDAL_SCRIPT_HPP

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "credal/credal.hpp"
#include "credal/mce.hpp"

namespace credal {

struct ScriptOptions {
  MceOptions mce;
  std::size_t vertex_letter_cap = 4;   // vertex/event enumeration cap
  std::size_t letter_cap = Language::kDefaultLetterCap;
  bool oracle_check = false;           // cross-check envelope answers
};

// Scripted evidence ledger. Generic entries (constrain) refine the prior
// model; specific entries (condition, jeffrey, mce, collapse) track the case
// at hand. A generic entry arriving after specific ones is applied to the
// retained prior and the specific entries are replayed on top, with a
// warning: constraining belongs before conditioning.
class Session {
 public:
  Session(Language lang, ScriptOptions opts);

  void constrain_entry(LinearConstraint c);
  void condition_entry(const Sentence& s);
  void jeffrey_entry(const Sentence& s, const Rational& weight);
  void jeffrey_partition_entry(const std::vector<std::pair<Sentence, Rational>>& pairs);
  void mce_entry(const std::vector<LinearConstraint>& cs);
  void collapse_maxent_entry();

  // expr in {lower s, upper s, accepted s, entails c, top, uncertainty,
  // ignorance, dist}; envelope arguments may be written `P(s)`.
  nlohmann::json query(const std::string& expr);

  bool point_mode() const { return dist_.has_value(); }
  const std::vector<std::string>& warnings() const { return warnings_; }
  const Language& language() const { return lang_; }

  // nullopt when no check applies (point mode or cap exceeded)
  std::optional<Rational> oracle_deviation(const std::string& expr);

 private:
  struct SpecificOp {
    enum class Kind { Condition, Jeffrey, JeffreyPartition, Mce, Collapse } kind;
    std::vector<std::pair<Sentence, Rational>> pairs;  // condition/jeffrey payloads
    std::vector<LinearConstraint> constraints;         // mce payload
  };

  void rebuild();
  void apply(const SpecificOp& op);
  ProbFunction collapse_target() const;
  Sentence parse_query_sentence(const std::string& rest) const;

  Language lang_;
  ScriptOptions opts_;
  std::vector<LinearConstraint> generic_;
  std::vector<SpecificOp> specifics_;
  std::optional<PartialModel> model_;
  std::optional<ConditionedModel> conditioned_;
  std::optional<ProbFunction> dist_;
  std::vector<std::string> warnings_;
};

// Executes a script (letters header, one entry or query per line, '#'
// comments) and returns the JSON report
//   {language, ledger:[...], warnings:[...], answers:{query: value}}.
// `name` seeds error messages ("name:line: ...").
nlohmann::json run_script(std::istream& in, const std::string& name, const ScriptOptions& opts);
nlohmann::json run_script_text(const std::string& text, const std::string& name,
                               const ScriptOptions& opts);

// Model file: letters header plus constraint lines.
ConstraintSet load_model(std::istream& in, const std::string& name,
                         std::size_t letter_cap = Language::kDefaultLetterCap);

// Splits "sentence:weight [sentence:weight ...]" respecting parentheses.
std::vector<std::pair<std::string, std::string>> split_weighted_pairs(const std::string& text);

}  // namespace credal

#endif
