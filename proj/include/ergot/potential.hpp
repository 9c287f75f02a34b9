#pragma once

#include <map>
#include <string>

#include "ergot/symbolic.hpp"
#include "ergot/types.hpp"

namespace ergot {

/// Real function on the shift space depending on the first `depth` symbols.
/// `table()[code]` is the value on the cylinder whose word has base-d code
/// `code`. Also used for test functions u fed to the transfer operator.
class LocallyConstantPotential {
public:
    LocallyConstantPotential(Alphabet alphabet, int depth, Vector table);

    /// Depth-2 potential from the exponential-scale matrix E(i, j) = e^{A(ij)}.
    static LocallyConstantPotential from_exp_matrix(const Matrix& exp_values);
    /// Log-scale table keyed by digit-string words, all of one length.
    static LocallyConstantPotential from_word_map(Alphabet alphabet, const std::map<std::string, double>& values);
    static LocallyConstantPotential constant(Alphabet alphabet, double value);
    /// 1 on the cylinder [word], 0 elsewhere.
    static LocallyConstantPotential cylinder(Alphabet alphabet, const Word& word);

    Alphabet alphabet() const noexcept { return alphabet_; }
    int depth() const noexcept { return depth_; }
    const Vector& table() const noexcept { return table_; }

    double operator()(const Word& word) const;
    double at(std::uint64_t code) const { return table_(static_cast<Eigen::Index>(code)); }

    /// Same function viewed at a larger depth (replication over the extra symbols).
    LocallyConstantPotential padded(int new_depth) const;

    LocallyConstantPotential operator+(double shift) const;

private:
    Alphabet alphabet_;
    int depth_;
    Vector table_;
};

/// max_w |sum_i e^{A(i w)} - 1| over words w of length depth-1.
double normalization_deviation(const LocallyConstantPotential& potential);

}  // namespace ergot
