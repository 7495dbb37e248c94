#pragma once

#include "vac/cohomology.hpp"

#include <iosfwd>
#include <stdexcept>

namespace vac {

// Location-carrying failure of the parse -> validate pipeline.
struct ParseError : std::runtime_error {
    std::string file;
    int line;

    ParseError(std::string f, int l, const std::string& msg)
        : std::runtime_error(f + ":" + std::to_string(l) + ": " + msg), file(std::move(f)),
          line(l)
    {
    }
};

// An algebra description file: the algebra itself plus an optional module
// block. Documents whose tables violate the structural invariants (unit,
// commutativity, associativity, Leibniz) are rejected at parse time.
struct AlgebraDocument {
    FiniteVertexAlgebra algebra;
    std::optional<ModuleStructure> module;
};

AlgebraDocument parse_document(const std::string& path);

// A cochain description file holds exactly one of the two cochain kinds,
// parsed against the host algebra/module dimensions. One-cochains are
// validated against the C^1 constraints at parse time; two-cochains are not
// (deciding cocycle conditions is a command, not a parse step).
struct CochainDocument {
    std::optional<OneCochain> one;
    std::optional<TwoCochain> two;
};

CochainDocument parse_cochain(const std::string& path, const FiniteVertexAlgebra& V,
                              const ModuleStructure& M);

// Deterministic serialization in the same grammar the parsers accept.
void write_algebra(std::ostream& os, const FiniteVertexAlgebra& V,
                   const ModuleStructure* M = nullptr);
void write_one_cochain(std::ostream& os, const OneCochain& g);
void write_two_cochain(std::ostream& os, const TwoCochain& f);

// Self-describing cohomology report: dimension, tail bound, witness data,
// window, exactness flag, and representatives in document form.
std::string report_str(const CohomologyReport& rep, const FiniteVertexAlgebra& V);

} // namespace vac
