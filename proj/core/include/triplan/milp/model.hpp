#pragma once

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace triplan::milp {

enum class VarKind { continuous, binary, integer };

/// Dense handle into a Model's variable table. Only meaningful for the
/// model that issued it.
struct VarId {
    int index = -1;

    [[nodiscard]] constexpr bool valid() const noexcept { return index >= 0; }
    constexpr auto operator<=>(const VarId&) const = default;
};

struct Variable {
    VarKind kind = VarKind::continuous;
    double lower = 0.0;
    double upper = 0.0;
    std::string name;

    [[nodiscard]] bool is_integral() const noexcept { return kind != VarKind::continuous; }
};

/// Sparse linear form: sum of coefficient * variable plus a constant.
/// Zero coefficients are dropped.
class LinearExpression {
public:
    LinearExpression() = default;
    explicit LinearExpression(double constant) : constant_(constant) {}

    void add(VarId var, double coeff);
    void add(const LinearExpression& other, double scale = 1.0);
    void set_constant(double c) noexcept { constant_ = c; }
    void add_constant(double c) noexcept { constant_ += c; }

    [[nodiscard]] double constant() const noexcept { return constant_; }
    [[nodiscard]] const std::map<VarId, double>& terms() const noexcept { return terms_; }
    [[nodiscard]] bool empty() const noexcept { return terms_.empty(); }

    /// Evaluates the expression against a dense value vector (including the constant).
    [[nodiscard]] double value(std::span<const double> x) const;

private:
    std::map<VarId, double> terms_;
    double constant_ = 0.0;
};

enum class Sense { le, eq, ge };

struct Constraint {
    LinearExpression expr;  // expression constant is folded into rhs on insertion
    Sense sense = Sense::le;
    double rhs = 0.0;
    std::string name;
};

/// A mixed-integer linear program in minimize form. Single-owner during
/// construction and solving; distinct models are fully independent.
class Model {
public:
    /// Adds a variable. Bounds must be finite with lower <= upper; binaries must
    /// stay within [0, 1]. Returns the next dense handle.
    VarId add_variable(VarKind kind, double lower, double upper, std::string name = {});

    /// Adds `expr sense rhs`. Every referenced variable must belong to this model.
    void add_constraint(LinearExpression expr, Sense sense, double rhs, std::string name = {});
    void add_le(LinearExpression expr, double rhs, std::string name = {});
    void add_ge(LinearExpression expr, double rhs, std::string name = {});
    void add_eq(LinearExpression expr, double rhs, std::string name = {});

    void set_objective(LinearExpression obj);
    [[nodiscard]] LinearExpression& objective() noexcept { return objective_; }
    [[nodiscard]] const LinearExpression& objective() const noexcept { return objective_; }

    /// Tightens a variable's bounds (used to pin decisions in tests and tools).
    void set_bounds(VarId var, double lower, double upper);
    void fix(VarId var, double value) { set_bounds(var, value, value); }

    [[nodiscard]] const std::vector<Variable>& variables() const noexcept { return variables_; }
    [[nodiscard]] const std::vector<Constraint>& constraints() const noexcept { return constraints_; }
    [[nodiscard]] std::size_t num_variables() const noexcept { return variables_.size(); }
    [[nodiscard]] std::size_t num_constraints() const noexcept { return constraints_.size(); }
    [[nodiscard]] const Variable& variable(VarId id) const;

    [[nodiscard]] double eval_objective(std::span<const double> x) const;

    /// Largest absolute constraint violation of `x`, including variable bounds.
    [[nodiscard]] double max_violation(std::span<const double> x) const;

    /// Plain-text dump, one constraint per line. Debugging aid, not a format contract.
    void write_lp_text(std::ostream& out) const;

private:
    void check_expr(const LinearExpression& expr) const;

    std::vector<Variable> variables_;
    std::vector<Constraint> constraints_;
    LinearExpression objective_;
};

}  // namespace triplan::milp
