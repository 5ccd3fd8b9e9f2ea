#include "macoord/nba.hpp"

#include <sstream>

namespace macoord {

std::string guard_str(const NbaGuard& g, const Alphabet& alphabet) {
  if (g.literals.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < g.literals.size(); ++i) {
    if (i > 0) out += " & ";
    const NbaLiteral& l = g.literals[i];
    if (!l.positive) out += '!';
    if (l.prop >= 0 && static_cast<std::size_t>(l.prop) < alphabet.size())
      out += alphabet[l.prop];
    else
      out += "p" + std::to_string(l.prop);
  }
  return out;
}

std::string Nba::to_dot(const Alphabet& alphabet) const {
  std::ostringstream os;
  os << "digraph nba {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (int q = 0; q < num_states; ++q)
    if (accepting[q]) os << "  s" << q << " [shape=doublecircle];\n";
  for (std::size_t i = 0; i < initial.size(); ++i) {
    os << "  init" << i << " [shape=point];\n";
    os << "  init" << i << " -> s" << initial[i] << ";\n";
  }
  for (int q = 0; q < num_states; ++q)
    for (const NbaEdge& e : edges[q])
      os << "  s" << q << " -> s" << e.target << " [label=\""
         << guard_str(e.guard, alphabet) << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace macoord
