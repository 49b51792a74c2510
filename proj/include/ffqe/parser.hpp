#ifndef FFQE_PARSER_HPP
#define FFQE_PARSER_HPP

#include <string_view>

#include "ffqe/formula.hpp"

namespace ffqe {

// Parses the formula surface syntax:
//
//   formula := quant | iff
//   quant   := ("exists" | "forall") ident+ "." formula
//   iff     := imp ("<->" imp)*
//   imp     := or ("->" or)*            (right associative)
//   or      := and ("\/" and)*
//   and     := not ("/\" not)*
//   not     := "~" not | atom | "(" formula ")"
//   atom    := term ("=" | "!=") term | "true" | "false"
//
// Terms use + - * ^ with explicit '*'; '#' comments run to end of line.
// Equations are stored moved to one side (s = t becomes the atom s - t = 0),
// "->" and "<->" are desugared, identifiers starting with '_' are rejected,
// and the field generator name denotes the generator constant.
FormulaPtr parse_formula(std::string_view text, const FieldSpec& field);

} // namespace ffqe

#endif
