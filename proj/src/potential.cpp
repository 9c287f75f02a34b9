#include "ergot/potential.hpp"

#include <cmath>

#include "ergot/errors.hpp"

namespace ergot {

LocallyConstantPotential::LocallyConstantPotential(Alphabet alphabet, int depth, Vector table)
    : alphabet_(alphabet), depth_(depth), table_(std::move(table)) {
    if (depth < 0) throw DomainError("potential depth must be nonnegative");
    if (static_cast<std::uint64_t>(table_.size()) != alphabet.word_count(depth))
        throw DomainError("potential table has " + std::to_string(table_.size()) + " entries, expected d^m = " +
                          std::to_string(alphabet.word_count(depth)));
    if (!table_.allFinite()) throw DomainError("potential table has non-finite entries");
}

LocallyConstantPotential LocallyConstantPotential::from_exp_matrix(const Matrix& exp_values) {
    if (exp_values.rows() != exp_values.cols()) throw DomainError("exponential-scale potential matrix must be square");
    const Alphabet alphabet(static_cast<int>(exp_values.rows()));
    if (!(exp_values.array() > 0.0).all()) throw DomainError("exponential-scale potential entries must be positive");
    // Row-major flattening matches the code of the word (i, j).
    Vector table(exp_values.size());
    const Eigen::Index d = exp_values.rows();
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) table(i * d + j) = std::log(exp_values(i, j));
    return LocallyConstantPotential(alphabet, 2, std::move(table));
}

LocallyConstantPotential LocallyConstantPotential::from_word_map(Alphabet alphabet,
                                                                 const std::map<std::string, double>& values) {
    if (values.empty()) throw DomainError("empty potential table");
    const int depth = static_cast<int>(values.begin()->first.size());
    const auto count = alphabet.word_count(depth);
    if (values.size() != count)
        throw DomainError("potential table needs all " + std::to_string(count) + " words of length " +
                          std::to_string(depth));
    Vector table(static_cast<Eigen::Index>(count));
    for (const auto& [key, value] : values) {
        if (static_cast<int>(key.size()) != depth) throw DomainError("potential words have mixed lengths");
        table(static_cast<Eigen::Index>(Word::parse(key, alphabet).code(alphabet))) = value;
    }
    return LocallyConstantPotential(alphabet, depth, std::move(table));
}

LocallyConstantPotential LocallyConstantPotential::constant(Alphabet alphabet, double value) {
    return LocallyConstantPotential(alphabet, 0, Vector::Constant(1, value));
}

LocallyConstantPotential LocallyConstantPotential::cylinder(Alphabet alphabet, const Word& word) {
    Vector table = Vector::Zero(static_cast<Eigen::Index>(alphabet.word_count(word.length())));
    table(static_cast<Eigen::Index>(word.code(alphabet))) = 1.0;
    return LocallyConstantPotential(alphabet, word.length(), std::move(table));
}

double LocallyConstantPotential::operator()(const Word& word) const {
    if (word.length() < depth_) throw DomainError("word shorter than potential depth");
    const auto d = static_cast<std::uint64_t>(alphabet_.size());
    const std::uint64_t code = word.code(alphabet_) / checked_pow(d, word.length() - depth_);
    return at(code);
}

LocallyConstantPotential LocallyConstantPotential::padded(int new_depth) const {
    if (new_depth < depth_) throw DomainError("cannot pad a potential to a smaller depth");
    const std::uint64_t block = alphabet_.word_count(new_depth - depth_);
    Vector table(static_cast<Eigen::Index>(alphabet_.word_count(new_depth)));
    for (Eigen::Index code = 0; code < table.size(); ++code)
        table(code) = table_(static_cast<Eigen::Index>(static_cast<std::uint64_t>(code) / block));
    return LocallyConstantPotential(alphabet_, new_depth, std::move(table));
}

LocallyConstantPotential LocallyConstantPotential::operator+(double shift) const {
    return LocallyConstantPotential(alphabet_, depth_, (table_.array() + shift).matrix());
}

double normalization_deviation(const LocallyConstantPotential& potential) {
    const LocallyConstantPotential p = potential.depth() < 1 ? potential.padded(1) : potential;
    const auto d = static_cast<Eigen::Index>(p.alphabet().size());
    const Eigen::Index contexts = p.table().size() / d;
    double worst = 0.0;
    for (Eigen::Index w = 0; w < contexts; ++w) {
        double sum = 0.0;
        for (Eigen::Index i = 0; i < d; ++i) sum += std::exp(p.table()(i * contexts + w));
        worst = std::max(worst, std::abs(sum - 1.0));
    }
    return worst;
}

}  // namespace ergot
