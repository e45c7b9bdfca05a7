#include "triplan/milp/model.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "triplan/error.hpp"

namespace triplan::milp {

void LinearExpression::add(VarId var, double coeff) {
    if (!var.valid()) throw Error("LinearExpression: invalid variable handle");
    if (!std::isfinite(coeff)) throw Error("LinearExpression: non-finite coefficient");
    if (coeff == 0.0) return;
    auto [it, inserted] = terms_.emplace(var, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0.0) terms_.erase(it);
    }
}

void LinearExpression::add(const LinearExpression& other, double scale) {
    for (const auto& [var, coeff] : other.terms_) add(var, coeff * scale);
    constant_ += other.constant_ * scale;
}

double LinearExpression::value(std::span<const double> x) const {
    double acc = constant_;
    for (const auto& [var, coeff] : terms_) acc += coeff * x[static_cast<std::size_t>(var.index)];
    return acc;
}

VarId Model::add_variable(VarKind kind, double lower, double upper, std::string name) {
    if (!std::isfinite(lower) || !std::isfinite(upper))
        throw BoundsError("variable '" + name + "': bounds must be finite");
    if (lower > upper)
        throw BoundsError("variable '" + name + "': inverted bounds [" + std::to_string(lower) +
                          ", " + std::to_string(upper) + "]");
    if (kind == VarKind::binary && (lower < 0.0 || upper > 1.0))
        throw BoundsError("variable '" + name + "': binary bounds must lie within [0, 1]");
    variables_.push_back(Variable{kind, lower, upper, std::move(name)});
    return VarId{static_cast<int>(variables_.size()) - 1};
}

void Model::check_expr(const LinearExpression& expr) const {
    for (const auto& [var, coeff] : expr.terms()) {
        (void)coeff;
        if (var.index < 0 || var.index >= static_cast<int>(variables_.size()))
            throw Error("constraint references variable not in this model");
    }
}

void Model::add_constraint(LinearExpression expr, Sense sense, double rhs, std::string name) {
    if (!std::isfinite(rhs)) throw Error("constraint '" + name + "': non-finite rhs");
    check_expr(expr);
    const double folded = rhs - expr.constant();
    expr.set_constant(0.0);
    constraints_.push_back(Constraint{std::move(expr), sense, folded, std::move(name)});
}

void Model::add_le(LinearExpression expr, double rhs, std::string name) {
    add_constraint(std::move(expr), Sense::le, rhs, std::move(name));
}
void Model::add_ge(LinearExpression expr, double rhs, std::string name) {
    add_constraint(std::move(expr), Sense::ge, rhs, std::move(name));
}
void Model::add_eq(LinearExpression expr, double rhs, std::string name) {
    add_constraint(std::move(expr), Sense::eq, rhs, std::move(name));
}

void Model::set_objective(LinearExpression obj) {
    check_expr(obj);
    objective_ = std::move(obj);
}

void Model::set_bounds(VarId var, double lower, double upper) {
    if (!var.valid() || var.index >= static_cast<int>(variables_.size()))
        throw Error("set_bounds: unknown variable");
    if (!std::isfinite(lower) || !std::isfinite(upper) || lower > upper)
        throw BoundsError("set_bounds: invalid bounds");
    variables_[static_cast<std::size_t>(var.index)].lower = lower;
    variables_[static_cast<std::size_t>(var.index)].upper = upper;
}

const Variable& Model::variable(VarId id) const {
    if (!id.valid() || id.index >= static_cast<int>(variables_.size()))
        throw Error("variable: unknown handle");
    return variables_[static_cast<std::size_t>(id.index)];
}

double Model::eval_objective(std::span<const double> x) const { return objective_.value(x); }

double Model::max_violation(std::span<const double> x) const {
    double worst = 0.0;
    for (std::size_t j = 0; j < variables_.size(); ++j) {
        worst = std::max(worst, variables_[j].lower - x[j]);
        worst = std::max(worst, x[j] - variables_[j].upper);
    }
    for (const auto& c : constraints_) {
        const double lhs = c.expr.value(x);
        switch (c.sense) {
            case Sense::le: worst = std::max(worst, lhs - c.rhs); break;
            case Sense::ge: worst = std::max(worst, c.rhs - lhs); break;
            case Sense::eq: worst = std::max(worst, std::fabs(lhs - c.rhs)); break;
        }
    }
    return worst;
}

namespace {

void write_term(std::ostream& out, bool first, double coeff, const std::string& name, int index) {
    if (first) {
        out << coeff << ' ';
    } else if (coeff >= 0.0) {
        out << "+ " << coeff << ' ';
    } else {
        out << "- " << -coeff << ' ';
    }
    if (name.empty())
        out << 'x' << index;
    else
        out << name;
}

void write_expr(std::ostream& out, const LinearExpression& expr, const std::vector<Variable>& vars) {
    bool first = true;
    for (const auto& [var, coeff] : expr.terms()) {
        write_term(out, first, coeff, vars[static_cast<std::size_t>(var.index)].name, var.index);
        out << ' ';
        first = false;
    }
    if (first) out << "0 ";
}

}  // namespace

void Model::write_lp_text(std::ostream& out) const {
    out << "min: ";
    write_expr(out, objective_, variables_);
    if (objective_.constant() != 0.0) out << "+ " << objective_.constant() << ' ';
    out << ";\n";
    for (std::size_t i = 0; i < constraints_.size(); ++i) {
        const auto& c = constraints_[i];
        if (c.name.empty())
            out << 'c' << i << ": ";
        else
            out << c.name << ": ";
        write_expr(out, c.expr, variables_);
        switch (c.sense) {
            case Sense::le: out << "<= "; break;
            case Sense::eq: out << "= "; break;
            case Sense::ge: out << ">= "; break;
        }
        out << c.rhs << ";\n";
    }
    for (std::size_t j = 0; j < variables_.size(); ++j) {
        const auto& v = variables_[j];
        out << v.lower << " <= ";
        if (v.name.empty())
            out << 'x' << j;
        else
            out << v.name;
        out << " <= " << v.upper;
        if (v.kind == VarKind::binary) out << " bin";
        if (v.kind == VarKind::integer) out << " int";
        out << ";\n";
    }
}

}  // namespace triplan::milp
