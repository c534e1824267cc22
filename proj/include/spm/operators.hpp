#pragma once

#include <cstddef>
#include <vector>

#include "spm/types.hpp"

namespace spm {

/**
 * @brief Symmetric positive definite matrix, exposed through the access
 * patterns the projection solvers consume: single entries (to form the
 * principal submatrix of an index set), full columns (to update the
 * residual), and matrix-vector products (to form right-hand sides and
 * initial residuals).
 *
 * Operators are immutable after construction and safe to share between
 * concurrent solver runs.
 */
class SpdOperator {
public:
    virtual ~SpdOperator() = default;

    /// System dimension n.
    std::size_t dim() const noexcept { return n_; }

    /// A(i,j). Throws std::out_of_range on an invalid index.
    virtual double entry(std::size_t i, std::size_t j) const = 0;

    /// Writes the j-th column into @p out (resized to n).
    virtual void column(std::size_t j, Vector& out) const = 0;

    /// out = A*x. Throws std::invalid_argument on a length mismatch.
    virtual void matvec(const Vector& x, Vector& out) const = 0;

    /// r += s * A(:,j). The residual-update workhorse; sparse
    /// representations only touch their stored entries.
    virtual void add_scaled_column(std::size_t j, double s, Vector& r) const = 0;

    Vector column(std::size_t j) const {
        Vector out;
        column(j, out);
        return out;
    }

    Vector matvec(const Vector& x) const {
        Vector out;
        matvec(x, out);
        return out;
    }

protected:
    explicit SpdOperator(std::size_t n) : n_(n) {}

    void check_index(std::size_t i, std::size_t j) const;
    void check_vector(const Vector& x) const;

private:
    std::size_t n_;
};

/**
 * @brief Dense row-major storage.
 *
 * Construction verifies exact symmetry and rejects anything else; positive
 * definiteness is the responsibility of whoever builds the entries.
 */
class DenseSpd final : public SpdOperator {
public:
    using SpdOperator::column;
    using SpdOperator::matvec;

    /// @p data is n*n entries in row-major order.
    DenseSpd(std::size_t n, std::vector<double> data);

    static DenseSpd identity(std::size_t n);

    double entry(std::size_t i, std::size_t j) const override;
    void column(std::size_t j, Vector& out) const override;
    void matvec(const Vector& x, Vector& out) const override;
    void add_scaled_column(std::size_t j, double s, Vector& r) const override;

    const std::vector<double>& data() const noexcept { return data_; }

private:
    std::vector<double> data_;
};

/**
 * @brief Structured matrix: constant background value everywhere, a
 * constant diagonal, and a constant first sub/super-diagonal.
 *
 * entry(i,j) = diag if i==j, band if |i-j|==1, background otherwise.
 * Although dense as a matrix, it stores three scalars and supports O(n)
 * columns and O(n) matrix-vector products (the background contributes
 * background * sum(x), corrected on the band).
 */
class BandPlusConstantSpd final : public SpdOperator {
public:
    using SpdOperator::column;
    using SpdOperator::matvec;

    BandPlusConstantSpd(std::size_t n, double diag, double band, double background);

    double entry(std::size_t i, std::size_t j) const override;
    void column(std::size_t j, Vector& out) const override;
    void matvec(const Vector& x, Vector& out) const override;
    void add_scaled_column(std::size_t j, double s, Vector& r) const override;

    double diag() const noexcept { return diag_; }
    double band() const noexcept { return band_; }
    double background() const noexcept { return background_; }

    /// Strict row-wise diagonal dominance with a positive diagonal, which
    /// certifies positive definiteness for this symmetric form.
    bool is_gershgorin_dominant() const noexcept;

private:
    double diag_;
    double band_;
    double background_;
};

/**
 * @brief General sparse matrix in compressed sparse column form.
 *
 * Row indices are sorted within each column. Construction validates the
 * structure and checks that the stored values are exactly symmetric.
 */
class CscSpd final : public SpdOperator {
public:
    using SpdOperator::column;
    using SpdOperator::matvec;

    CscSpd(std::size_t n,
           std::vector<std::size_t> col_ptr,
           std::vector<std::size_t> row_idx,
           std::vector<double> values);

    struct Triplet {
        std::size_t row;
        std::size_t col;
        double value;
    };

    /// Builds from unordered triplets; duplicate (row, col) pairs are summed.
    static CscSpd from_triplets(std::size_t n, std::vector<Triplet> entries);

    double entry(std::size_t i, std::size_t j) const override;
    void column(std::size_t j, Vector& out) const override;
    void matvec(const Vector& x, Vector& out) const override;
    void add_scaled_column(std::size_t j, double s, Vector& r) const override;

    std::size_t nnz() const noexcept { return values_.size(); }
    const std::vector<std::size_t>& col_ptr() const noexcept { return col_ptr_; }
    const std::vector<std::size_t>& row_idx() const noexcept { return row_idx_; }
    const std::vector<double>& values() const noexcept { return values_; }

private:
    void validate_structure() const;
    void verify_symmetric() const;

    std::vector<std::size_t> col_ptr_;
    std::vector<std::size_t> row_idx_;
    std::vector<double> values_;
};

/// Materializes any operator as dense storage, for cross-checks and small
/// direct factorizations.
DenseSpd densify(const SpdOperator& op);

}  // namespace spm
