#ifndef LEXENT_DATASETS_TAXONOMY_HPP
#define LEXENT_DATASETS_TAXONOMY_HPP

#include <algorithm>
#include <array>
#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "lexent/error.hpp"
#include "lexent/util/files.hpp"
#include "lexent/util/text.hpp"

namespace lexent {

struct RelationEntry {
  std::string id;
  std::string category;
  std::string subcategory;
  std::string example;
  int a_entails_b = 0;
  int b_entails_a = 0;

  friend bool operator==(const RelationEntry&, const RelationEntry&) = default;
};

struct RelationRow {
  std::string_view id, category, subcategory, example;
  int ab, ba;
};

// 79 relation subcategories with the entailment direction of a:b and b:a.
// The same table ships as data/taxonomy.tsv.
inline constexpr std::array<RelationRow, 79> kRelationRows{{
    {"1a", "class-inclusion", "taxonomic", "flower:tulip", 0, 1},
    {"1b", "class-inclusion", "functional", "weapon:knife", 0, 1},
    {"1c", "class-inclusion", "singular:collective", "cutlery:spoon", 0, 1},
    {"1d", "class-inclusion", "plural:collective", "dishes:saucers", 0, 1},
    {"1e", "class-inclusion", "class:individual", "mountain:Everest", 0, 1},
    {"2a", "part-whole", "object:component", "car:engine", 1, 0},
    {"2b", "part-whole", "collection:member", "forest:tree", 1, 0},
    {"2c", "part-whole", "mass:potion", "time:moment", 1, 0},
    {"2d", "part-whole", "event:feature", "banquet:food", 1, 0},
    {"2e", "part-whole", "stage:activity", "kickoff:football", 0, 1},
    {"2f", "part-whole", "item:topological part", "room:corner", 1, 0},
    {"2g", "part-whole", "object:stuff", "glacier:ice", 1, 0},
    {"2h", "part-whole", "creature:possession", "millionaire:money", 1, 0},
    {"2i", "part-whole", "item:nonpart", "horse:wings", 0, 0},
    {"2j", "part-whole", "item:ex-part", "prisoner:freedom", 0, 0},
    {"3a", "similar", "synonymity", "car:auto", 1, 1},
    {"3b", "similar", "dimension similarity", "simmer:boil", 0, 0},
    {"3c", "similar", "dimension excessive", "concerned:obsessed", 0, 1},
    {"3d", "similar", "dimension naughty", "listen:eavesdrop", 0, 1},
    {"3e", "similar", "conversion", "grape:wine", 0, 0},
    {"3f", "similar", "attribute similarity", "rake:fork", 0, 0},
    {"3g", "similar", "coordinates", "son:daughter", 0, 0},
    {"3h", "similar", "change", "crescendo:sound", 1, 0},
    {"4a", "contrast", "contradictory", "alive:dead", 0, 0},
    {"4b", "contrast", "contrary", "happy:sad", 0, 0},
    {"4c", "contrast", "reverse", "buy:sell", 0, 0},
    {"4d", "contrast", "directional", "left:right", 0, 0},
    {"4e", "contrast", "incompatible", "slow:stationary", 0, 0},
    {"4f", "contrast", "asymmetric contrary", "hot:cool", 0, 0},
    {"4g", "contrast", "pseudoantonym", "popular:shy", 0, 0},
    {"4h", "contrast", "defective", "limp:walk", 1, 0},
    {"5a", "attribute", "item:attribute", "glass:fragile", 1, 0},
    {"5b", "attribute", "attribute:condition", "edible:eaten", 0, 0},
    {"5c", "attribute", "object:state", "beggar:poverty", 1, 0},
    {"5d", "attribute", "attribute:state", "contentious:conflict", 1, 0},
    {"5e", "attribute", "object:typical act", "soldier:fight", 0, 0},
    {"5f", "attribute", "attribute:typical act", "viable:live", 0, 0},
    {"5g", "attribute", "act:act attribute", "creep:slow", 1, 0},
    {"5h", "attribute", "act:object attribute", "sterilize:infectious", 0, 0},
    {"5i", "attribute", "act:resultant", "rain:wet", 1, 0},
    {"6a", "non-attribute", "item:nonattribute", "harmony:discordant", 0, 0},
    {"6b", "non-attribute", "attr.:noncondition", "brittle:molded", 0, 0},
    {"6c", "non-attribute", "object:nonstate", "laureate:dishonor", 0, 0},
    {"6d", "non-attribute", "attr.:nonstate", "dull:cunning", 0, 0},
    {"6e", "non-attribute", "obj.:atypical act", "recluse:socialize", 0, 0},
    {"6f", "non-attribute", "attr.:atypical act", "reticent:talk", 0, 0},
    {"6g", "non-attribute", "act:act nonattr.", "creep:fast", 0, 0},
    {"6h", "non-attribute", "act:object nonattr.", "embellish:austere", 0, 0},
    {"7a", "case relations", "agent:object", "tailor:suit", 0, 0},
    {"7b", "case relations", "agent:recipient", "doctor:patient", 0, 0},
    {"7c", "case relations", "agent:instrument", "farmer:tractor", 0, 0},
    {"7d", "case relations", "act:object", "plow:earth", 0, 0},
    {"7e", "case relations", "act:recipient", "bequeath:heir", 1, 0},
    {"7f", "case relations", "object:recipient", "speech:audience", 0, 0},
    {"7g", "case relations", "object:instrument", "pipe:wrench", 0, 0},
    {"7h", "case relations", "recipient:instr.", "graduate:diploma", 0, 0},
    {"8a", "cause-purpose", "cause:effect", "enigma:puzzlement", 1, 0},
    {"8b", "cause-purpose", "cause:counteract", "hunger:eat", 0, 0},
    {"8c", "cause-purpose", "enabler:object", "match:candle", 0, 0},
    {"8d", "cause-purpose", "act:goal", "flee:escape", 0, 0},
    {"8e", "cause-purpose", "agent:goal", "climber:peak", 0, 0},
    {"8f", "cause-purpose", "instrument:goal", "anesthetic:numbness", 1, 0},
    {"8g", "cause-purpose", "instrument:use", "abacus:calculate", 0, 0},
    {"8h", "cause-purpose", "prevention", "pesticide:vermin", 0, 0},
    {"9a", "space-time", "location:item", "arsenal:weapon", 1, 0},
    {"9b", "space-time", "location:product", "bakery:bread", 1, 0},
    {"9c", "space-time", "location:activity", "highway:driving", 0, 0},
    {"9d", "space-time", "location:instr.", "beach:swimsuit", 0, 0},
    {"9e", "space-time", "contiguity", "coast:ocean", 1, 1},
    {"9f", "space-time", "time:activity", "childhood:play", 0, 0},
    {"9g", "space-time", "time:associated", "retirement:pension", 0, 0},
    {"9h", "space-time", "sequence", "prologue:narrative", 0, 0},
    {"9i", "space-time", "attachment", "belt:waist", 0, 0},
    {"10a", "reference", "sign:significant", "siren:danger", 1, 0},
    {"10b", "reference", "expression", "hug:affection", 1, 0},
    {"10c", "reference", "representation", "person:portrait", 0, 1},
    {"10d", "reference", "plan", "blueprint:building", 0, 1},
    {"10e", "reference", "knowledge", "psychology:minds", 1, 0},
    {"10f", "reference", "concealment", "disguise:identity", 1, 0},
}};

inline constexpr std::size_t kTaxonomySize = 79;

class RelationTaxonomy {
 public:
  explicit RelationTaxonomy(std::vector<RelationEntry> entries) : entries_(std::move(entries)) {
    for (const auto& e : entries_) {
      if (e.a_entails_b < 0 || e.a_entails_b > 1 || e.b_entails_a < 0 || e.b_entails_a > 1) {
        throw InputError("entailment bits of relation " + e.id + " must be 0 or 1");
      }
    }
    std::vector<std::string_view> ids;
    for (const auto& e : entries_) ids.push_back(e.id);
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) throw InputError("duplicate relation id in taxonomy");
  }

  static RelationTaxonomy builtin() {
    std::vector<RelationEntry> e;
    for (const auto& r : kRelationRows) {
      e.push_back({std::string(r.id), std::string(r.category), std::string(r.subcategory), std::string(r.example),
                   r.ab, r.ba});
    }
    return RelationTaxonomy(std::move(e));
  }

  const std::vector<RelationEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

  const RelationEntry* find(std::string_view id) const {
    for (const auto& e : entries_)
      if (e.id == id) return &e;
    return nullptr;
  }

  const RelationEntry& at(std::string_view id) const {
    const auto* e = find(id);
    if (!e) throw InputError("unknown relation id '" + std::string(id) + "'");
    return *e;
  }

  int ab_total() const {
    int n = 0;
    for (const auto& e : entries_) n += e.a_entails_b;
    return n;
  }
  int ba_total() const {
    int n = 0;
    for (const auto& e : entries_) n += e.b_entails_a;
    return n;
  }

  friend bool operator==(const RelationTaxonomy&, const RelationTaxonomy&) = default;

 private:
  std::vector<RelationEntry> entries_;
};

/// Entailment label of a pair from relation `id`; an inverted pair (b:a) uses
/// the b_entails_a bit.
inline int mapping_label(std::string_view id, bool inverted, const RelationTaxonomy& taxonomy) {
  const auto& e = taxonomy.at(id);
  return inverted ? e.b_entails_a : e.a_entails_b;
}

inline RelationTaxonomy parse_taxonomy(std::istream& in, const std::string& source = "<taxonomy>") {
  std::vector<RelationEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (util::is_blank_or_comment(line)) continue;
    const auto f = util::split(util::trim(line), '\t');
    if (f.size() != 6) throw ParseError(source, line_no, "expected 6 tab-separated fields");
    const auto ab = util::parse_int<int>(f[4]);
    const auto ba = util::parse_int<int>(f[5]);
    if (!ab || !ba || *ab < 0 || *ab > 1 || *ba < 0 || *ba > 1) {
      throw ParseError(source, line_no, "entailment bits must be 0 or 1");
    }
    entries.push_back({std::string(f[0]), std::string(f[1]), std::string(f[2]), std::string(f[3]), *ab, *ba});
  }
  return RelationTaxonomy(std::move(entries));
}

inline RelationTaxonomy load_taxonomy(const std::filesystem::path& path) {
  auto in = util::open_input(path);
  return parse_taxonomy(in, path.string());
}

inline std::string format_taxonomy(const RelationTaxonomy& t) {
  std::string out = "# id\tcategory\tsubcategory\texample\ta_entails_b\tb_entails_a\n";
  for (const auto& e : t.entries()) {
    out += e.id + '\t' + e.category + '\t' + e.subcategory + '\t' + e.example + '\t' +
           std::to_string(e.a_entails_b) + '\t' + std::to_string(e.b_entails_a) + '\n';
  }
  return out;
}

}  // namespace lexent

#endif  // LEXENT_DATASETS_TAXONOMY_HPP
