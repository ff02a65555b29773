#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hlf::tateobj {

// The base exact category of a tower.
struct BaseCategory {
  enum class Kind { Vect, LCA, Opaque };
  Kind kind = Kind::Vect;
  std::string name;  // field tag for Vect, free text otherwise

  static BaseCategory vect(std::string field_tag) { return {Kind::Vect, std::move(field_tag)}; }
  static BaseCategory lca() { return {Kind::LCA, "LCA"}; }
  static BaseCategory opaque(std::string name) { return {Kind::Opaque, std::move(name)}; }
  bool has_duality() const { return kind != Kind::Opaque; }
  bool rigid() const { return kind == Kind::Vect; }
  std::string to_string() const;
  friend bool operator==(const BaseCategory& a, const BaseCategory& b) = default;
};

struct Leg {
  enum class Kind { Ind, Pro, Tate };
  Kind kind = Kind::Tate;
  std::string var;  // Tate legs only
  static Leg ind() { return {Kind::Ind, {}}; }
  static Leg pro() { return {Kind::Pro, {}}; }
  static Leg tate(std::string v) { return {Kind::Tate, std::move(v)}; }
  std::string to_string() const;
  friend bool operator==(const Leg& a, const Leg& b) = default;
};

// A formal Ind/Pro/Tate tower over a base category. Legs are listed
// innermost first, so {Tate(s), Tate(t)} over Vect(k) is k((s))((t)).
class TateDescriptor {
 public:
  TateDescriptor(BaseCategory base, std::vector<Leg> legs);
  static TateDescriptor unit(BaseCategory base) { return TateDescriptor(std::move(base), {}); }
  static TateDescriptor tate(BaseCategory base, const std::vector<std::string>& vars);
  // "Tate(s).Tate(t)@Vect(Q)", legs innermost first; "unit@Vect(Q)" for depth 0.
  static TateDescriptor parse(std::string_view text);

  const BaseCategory& base() const { return base_; }
  const std::vector<Leg>& legs() const { return legs_; }
  int size() const { return static_cast<int>(legs_.size()); }
  int depth() const;  // number of Tate legs
  bool all_tate() const;
  std::vector<std::string> tate_vars() const;
  std::string to_string() const;
  // k((s))((t)) style when every leg is Tate over Vect, to_string() otherwise.
  std::string tower_string() const;
  friend bool operator==(const TateDescriptor& a, const TateDescriptor& b) = default;

 private:
  BaseCategory base_;
  std::vector<Leg> legs_;
};

// Monotone interleaving of an n-block (L) and an m-block (R). Word
// positions are read innermost first.
class Shuffle {
 public:
  enum class Side { L, R };
  Shuffle(int n, int m, std::vector<Side> word);
  static Shuffle trivial(int n, int m);  // all L then all R
  static Shuffle parse(int n, int m, std::string_view word);  // e.g. "LRL"
  static std::vector<Shuffle> all(int n, int m);

  int n() const { return n_; }
  int m() const { return m_; }
  const std::vector<Side>& word() const { return word_; }
  // Positions (0-based) of the L block elements and R block elements.
  std::vector<int> left_map() const;
  std::vector<int> right_map() const;
  std::string to_string() const;
  friend bool operator==(const Shuffle& a, const Shuffle& b) = default;

 private:
  int n_;
  int m_;
  std::vector<Side> word_;
};

TateDescriptor tensor_descriptor(const TateDescriptor& V, const TateDescriptor& W);
TateDescriptor tensor_descriptor(const TateDescriptor& V, const TateDescriptor& W, const Shuffle& sigma);

struct ShufflePair {
  Shuffle sigma_prime;  // (n, m + l)
  Shuffle tau_prime;    // (m, l)
};
// The unique pair with tau o (sigma + id) = sigma' o (id + tau').
ShufflePair shuffle_compose(const Shuffle& sigma, const Shuffle& tau);
// Images of the three blocks under tau o (sigma + id) and sigma' o (id + tau').
std::vector<int> composite_lhs(const Shuffle& sigma, const Shuffle& tau);
std::vector<int> composite_rhs(const Shuffle& sigma_prime, const Shuffle& tau_prime);

// Formal sum over every shuffle.
std::vector<TateDescriptor> tensor_all(const TateDescriptor& V, const TateDescriptor& W);

TateDescriptor dualize_descriptor(const TateDescriptor& V);
TateDescriptor hom_descriptor(const TateDescriptor& U, const TateDescriptor& V);

}  // namespace hlf::tateobj
