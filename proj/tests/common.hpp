#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "tracebracket.hpp"

namespace tbtest {

inline std::string fixture_text(const std::string& name) {
  std::ifstream in(std::string(TB_FIXTURES) + "/" + name);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline tracebracket::OrientedDiagram diagram(const std::string& name) {
  return tracebracket::parse_diagram(fixture_text(name));
}

inline tracebracket::Biquandle biquandle(const std::string& name) {
  return tracebracket::parse_biquandle(fixture_text(name));
}

inline tracebracket::BiquandleBracket bracket(const tracebracket::Biquandle& X, const std::string& name) {
  return tracebracket::make_bracket(X, tracebracket::parse_bracket(fixture_text(name)));
}

inline tracebracket::BiquandleBracket generic_bracket() {
  return bracket(tracebracket::Biquandle::trivial(1), "br_generic.txt");
}

inline tracebracket::BiquandleBracket laurent(const std::string& text) {
  return tracebracket::make_bracket(tracebracket::Biquandle::trivial(1),
                                    tracebracket::parse_bracket("ring laurent\n" + text + "\n"));
}

}  // namespace tbtest
