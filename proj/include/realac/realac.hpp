#ifndef REALAC_REALAC_HPP
#define REALAC_REALAC_HPP

#include "realac/rational.hpp"
#include "realac/error.hpp"
#include "realac/signature.hpp"
#include "realac/ast.hpp"
#include "realac/parser.hpp"
#include "realac/printer.hpp"
#include "realac/structure.hpp"
#include "realac/eval.hpp"
#include "realac/rewrite.hpp"
#include "realac/circuit.hpp"
#include "realac/normalize.hpp"
#include "realac/compile.hpp"
#include "realac/reverse.hpp"
#include "realac/generate.hpp"

#endif
