#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "formality/dga.hpp"

namespace formality {

/// A DGA together with its manifold-level metadata: dimension, the
/// distinguished symplectic form (when the model has one), and role tags for
/// the named generators of the built-in families.
struct Model {
    DGA dga;
    int dimension = 0;
    std::optional<Element> symplectic_form;
    std::vector<std::pair<std::string, std::string>> roles;  // role tag -> generator name
    std::string description;
};

/// Nilmanifold M(p,q): 2p+2q+2 degree-1 generators
/// a_1..a_p, b, c_1..c_p, at_1..at_q, bt, ct_1..ct_q with
/// d c_i = -a_i*b, d ct_i = -at_i*bt, and symplectic form
/// sum a_i*c_i + sum at_i*ct_i + b*bt.
Model mpq_model(int p, int q);

/// 4-dimensional nilmanifold with b_1 = b in {2,3}: generators a, b, c, h,
/// d c = a*b, d h = a*c (b=2) or 0 (b=3), symplectic form a*h + b*c.
Model fgg_model(int b);

/// Cohomology model of S^2: one degree-2 generator x with x^2 = 0 and zero
/// differential.
Model sphere2_model();

/// 2k-torus: closed degree-1 generators x1,y1,...,xk,yk with the standard
/// form sum x_i*y_i.
Model torus_model(int k);

inline DGA sphere2() { return sphere2_model().dga; }
inline DGA torus(int k) { return torus_model(k).dga; }
inline DGA m_pq(int p, int q) { return mpq_model(p, q).dga; }
inline DGA fgg(int b) { return fgg_model(b).dga; }

/// Parses a polynomial over the algebra's generator names:
///   poly := ['-'] term (('+'|'-') term)*
///   term := rational | [rational '*'] name ('^' int)? ('*' name ('^' int)?)*
/// Throws ParseError with position info (line fixed to `line` for embedding
/// in multi-line sources).
Element parse_element(const GradedAlgebra& algebra, std::string_view text, int line = 1);

/// Model DSL:
///   gen <name> <degree> [trunc <k>]
///   d <name> = <polynomial>
/// with '#' comments. Returns a validated DGA; a d^2 != 0 input raises an
/// Error naming an offending generator.
DGA parse_model(std::string_view text);

/// Inverse of parse_model: canonical order, LF line endings.
std::string serialize_model(const DGA& dga);

/// Recipe tree over the closed constructions the realizer emits. Atoms build
/// the models above; S1_BUNDLE carries the Euler class as a polynomial over
/// the base model's generator names.
struct ModelRecipe {
    enum class Kind { Mpq, Fgg, S2, T2, S1Bundle, Tensor };

    Kind kind = Kind::S2;
    int p = 0, q = 0;  // Mpq uses p,q; Fgg uses p as b
    std::vector<ModelRecipe> children;
    std::string euler_class;

    static ModelRecipe mpq(int p, int q);
    static ModelRecipe fgg(int b);
    static ModelRecipe s2();
    static ModelRecipe t2();
    static ModelRecipe tensor(ModelRecipe lhs, ModelRecipe rhs);
    static ModelRecipe s1_bundle(ModelRecipe base, std::string euler_class);

    std::string to_string() const;
    static ModelRecipe parse(std::string_view text);

    bool operator==(const ModelRecipe& rhs) const;
};

}  // namespace formality
