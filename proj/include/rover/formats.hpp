#pragma once

// Line-oriented text formats. Every parser takes the text and a file name
// used in messages; the *_file variants read from disk. Syntax problems
// raise ParseError, well-formed text describing an invalid value raises
// ParseDomainError. Emitters produce text the matching parser accepts.

#include <istream>
#include <map>
#include <string>
#include <vector>

#include "rover/aaut.hpp"
#include "rover/abel.hpp"
#include "rover/affine.hpp"
#include "rover/topo.hpp"
#include "rover/tree.hpp"

namespace rover::formats {

// automaton d=<d>
// state <name> perm <d images> trans <d state names>
// initial <name>
struct AutomatonFile {
  tree::Automaton automaton;  // pruned to the states reachable from `initial`
  // Every declared state as an automorphism, in declaration order.
  std::vector<std::pair<std::string, tree::Automaton>> states;
};

AutomatonFile parse_automaton(std::istream& in, std::string const& file);
AutomatonFile parse_automaton_file(std::string const& path);
std::string emit_automaton(tree::Automaton const& f);

// affine / n / N / p / gen <name> translation|linear|affine ... / retract ...
affine::AffineGroupSpec parse_affine_spec(std::istream& in, std::string const& file);
affine::AffineGroupSpec parse_affine_spec_file(std::string const& path);
std::string emit_affine_spec(affine::AffineGroupSpec const& spec);

// wreath d=<d> r=<r> / gen <name> perm <d images> / stateclass <letter> <r ints>
abel::WreathPresentation parse_wreath(std::istream& in, std::string const& file);
abel::WreathPresentation parse_wreath_file(std::string const& path);
std::string emit_wreath(abel::WreathPresentation const& w);

// matrices n=<n> / gen <name> / n rows of n rationals
struct MatrixFile {
  std::size_t n = 1;
  std::vector<affine::NamedMatrix> generators;
};

MatrixFile parse_matrices(std::istream& in, std::string const& file);
MatrixFile parse_matrices_file(std::string const& path);
std::string emit_matrices(MatrixFile const& m);

// graph <V> / edge <u> <v>
topo::Graph parse_graph(std::istream& in, std::string const& file);
topo::Graph parse_graph_file(std::string const& path);
std::string emit_graph(topo::Graph const& g);

// simplex <v0> <v1> ...
topo::SimplicialComplex parse_complex(std::istream& in, std::string const& file);
std::string emit_complex(topo::SimplicialComplex const& K);

// Named labels that triple files refer to: the states of an automaton file
// or the generators of an affine spec.
class LabelContext {
 public:
  LabelContext() = default;
  explicit LabelContext(int d);
  explicit LabelContext(AutomatonFile const& automata);
  explicit LabelContext(affine::AffineGroupSpec const& spec);

  int degree() const noexcept { return d_; }
  std::vector<std::string> const& names() const noexcept { return names_; }
  aaut::Label const& operator[](std::string const& name) const;
  bool contains(std::string const& name) const { return labels_.count(name) > 0; }

  // `id`, `1`, a name, or `w:x1,x2^-1,...` for the product x1 x2^-1 ...
  // (rightmost factor acts first).
  aaut::Label resolve(std::string const& token) const;
  // Inverse of resolve: a name, an inverse or a word of length two.
  // Throws DomainError when nothing that short matches.
  std::string name_of(aaut::Label const& f) const;

 private:
  int d_ = 2;
  std::vector<std::string> names_;
  std::map<std::string, aaut::Label> labels_;
};

// triple d=<d> / minus <forest> / perm <images> / labels <tokens> / plus <forest>
aaut::Triple parse_triple(std::istream& in, std::string const& file, LabelContext const& context);
aaut::Triple parse_triple_file(std::string const& path, LabelContext const& context);
std::string emit_triple(aaut::Triple const& x, LabelContext const& context);

// Reads a group file whose header decides the kind: automaton or affine.
LabelContext load_label_context(std::string const& path);

// "111" (one letter per character, d <= 9) or "1,1,1".
tree::Word parse_word(std::string const& text);
std::string format_word(tree::Word const& w, bool compact);

}  // namespace rover::formats
