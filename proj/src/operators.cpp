#include "spm/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace spm {

double dot(const Vector& x, const Vector& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

double norm2(const Vector& x) { return std::sqrt(dot(x, x)); }

double norm_inf(const Vector& x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
}

void SpdOperator::check_index(std::size_t i, std::size_t j) const {
    if (i >= n_ || j >= n_) {
        throw std::out_of_range("index (" + std::to_string(i) + ", " + std::to_string(j) +
                                ") out of range for dimension " + std::to_string(n_));
    }
}

void SpdOperator::check_vector(const Vector& x) const {
    if (x.size() != n_) {
        throw std::invalid_argument("vector length " + std::to_string(x.size()) +
                                    " does not match operator dimension " + std::to_string(n_));
    }
}

// ---------------------------------------------------------------------------
// DenseSpd

DenseSpd::DenseSpd(std::size_t n, std::vector<double> data)
    : SpdOperator(n), data_(std::move(data)) {
    if (n == 0) throw std::invalid_argument("dimension must be positive");
    if (data_.size() != n * n) {
        throw std::invalid_argument("dense storage size " + std::to_string(data_.size()) +
                                    " does not match n*n = " + std::to_string(n * n));
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (data_[i * n + j] != data_[j * n + i]) {
                throw std::invalid_argument("matrix is not symmetric at (" + std::to_string(i) +
                                            ", " + std::to_string(j) + ")");
            }
        }
    }
}

DenseSpd DenseSpd::identity(std::size_t n) {
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 1.0;
    return DenseSpd(n, std::move(d));
}

double DenseSpd::entry(std::size_t i, std::size_t j) const {
    check_index(i, j);
    return data_[i * dim() + j];
}

void DenseSpd::column(std::size_t j, Vector& out) const {
    check_index(0, j);
    const std::size_t n = dim();
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = data_[i * n + j];
}

void DenseSpd::matvec(const Vector& x, Vector& out) const {
    check_vector(x);
    const std::size_t n = dim();
    out.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = data_.data() + i * n;
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += row[j] * x[j];
        out[i] = s;
    }
}

void DenseSpd::add_scaled_column(std::size_t j, double s, Vector& r) const {
    check_index(0, j);
    check_vector(r);
    const std::size_t n = dim();
    for (std::size_t i = 0; i < n; ++i) r[i] += s * data_[i * n + j];
}

// ---------------------------------------------------------------------------
// BandPlusConstantSpd

BandPlusConstantSpd::BandPlusConstantSpd(std::size_t n, double diag, double band,
                                         double background)
    : SpdOperator(n), diag_(diag), band_(band), background_(background) {
    if (n == 0) throw std::invalid_argument("dimension must be positive");
}

double BandPlusConstantSpd::entry(std::size_t i, std::size_t j) const {
    check_index(i, j);
    if (i == j) return diag_;
    if (i + 1 == j || j + 1 == i) return band_;
    return background_;
}

void BandPlusConstantSpd::column(std::size_t j, Vector& out) const {
    check_index(0, j);
    const std::size_t n = dim();
    out.assign(n, background_);
    out[j] = diag_;
    if (j > 0) out[j - 1] = band_;
    if (j + 1 < n) out[j + 1] = band_;
}

void BandPlusConstantSpd::matvec(const Vector& x, Vector& out) const {
    check_vector(x);
    const std::size_t n = dim();
    out.resize(n);
    double sum = 0.0;
    for (double v : x) sum += v;
    for (std::size_t i = 0; i < n; ++i) {
        double s = background_ * sum + (diag_ - background_) * x[i];
        if (i > 0) s += (band_ - background_) * x[i - 1];
        if (i + 1 < n) s += (band_ - background_) * x[i + 1];
        out[i] = s;
    }
}

void BandPlusConstantSpd::add_scaled_column(std::size_t j, double s, Vector& r) const {
    check_index(0, j);
    check_vector(r);
    const std::size_t n = dim();
    const double sb = s * background_;
    for (std::size_t i = 0; i < n; ++i) r[i] += sb;
    r[j] += s * (diag_ - background_);
    if (j > 0) r[j - 1] += s * (band_ - background_);
    if (j + 1 < n) r[j + 1] += s * (band_ - background_);
}

bool BandPlusConstantSpd::is_gershgorin_dominant() const noexcept {
    const std::size_t n = dim();
    if (diag_ <= 0.0) return false;
    if (n == 1) return true;
    // Worst row is an interior one (two band entries plus n-3 background
    // entries); the first row has one band entry and n-2 background entries.
    double worst = std::abs(band_) + (n >= 2 ? (double)(n - 2) : 0.0) * std::abs(background_);
    if (n >= 3) {
        double interior = 2.0 * std::abs(band_) + (double)(n - 3) * std::abs(background_);
        worst = std::max(worst, interior);
    }
    return diag_ > worst;
}

// ---------------------------------------------------------------------------
// CscSpd

CscSpd::CscSpd(std::size_t n, std::vector<std::size_t> col_ptr,
               std::vector<std::size_t> row_idx, std::vector<double> values)
    : SpdOperator(n),
      col_ptr_(std::move(col_ptr)),
      row_idx_(std::move(row_idx)),
      values_(std::move(values)) {
    if (n == 0) throw std::invalid_argument("dimension must be positive");
    validate_structure();
    verify_symmetric();
}

CscSpd CscSpd::from_triplets(std::size_t n, std::vector<Triplet> entries) {
    for (const Triplet& t : entries) {
        if (t.row >= n || t.col >= n) {
            throw std::invalid_argument("triplet index out of range");
        }
    }
    std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
        if (a.col != b.col) return a.col < b.col;
        return a.row < b.row;
    });

    std::vector<std::size_t> ptr(n + 1, 0);
    std::vector<std::size_t> rows;
    std::vector<double> vals;
    rows.reserve(entries.size());
    vals.reserve(entries.size());
    for (std::size_t k = 0; k < entries.size(); ++k) {
        if (!rows.empty() && entries[k].col == entries[k - 1].col &&
            entries[k].row == entries[k - 1].row) {
            vals.back() += entries[k].value;  // merge duplicates
        } else {
            rows.push_back(entries[k].row);
            vals.push_back(entries[k].value);
            ptr[entries[k].col + 1] += 1;
        }
    }
    for (std::size_t j = 0; j < n; ++j) ptr[j + 1] += ptr[j];
    return CscSpd(n, std::move(ptr), std::move(rows), std::move(vals));
}

void CscSpd::validate_structure() const {
    const std::size_t n = dim();
    if (col_ptr_.size() != n + 1 || col_ptr_.front() != 0 || col_ptr_.back() != row_idx_.size() ||
        row_idx_.size() != values_.size()) {
        throw std::invalid_argument("inconsistent compressed-column arrays");
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (col_ptr_[j] > col_ptr_[j + 1]) {
            throw std::invalid_argument("column pointers must be non-decreasing");
        }
        for (std::size_t k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) {
            if (row_idx_[k] >= n) throw std::invalid_argument("row index out of range");
            if (k > col_ptr_[j] && row_idx_[k - 1] >= row_idx_[k]) {
                throw std::invalid_argument("row indices must be strictly increasing per column");
            }
        }
    }
}

void CscSpd::verify_symmetric() const {
    // Every strictly-lower entry must have a matching upper entry with an
    // equal value; equal triangle counts then make the pairing a bijection.
    const std::size_t n = dim();
    std::size_t lower = 0;
    std::size_t upper = 0;
    std::vector<std::size_t> cursor(col_ptr_.begin(), col_ptr_.end() - 1);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) {
            const std::size_t i = row_idx_[k];
            if (i < j) {
                ++upper;
                continue;
            }
            if (i == j) continue;
            ++lower;
            // Find (j, i): next unvisited upper entry of column i must be row j.
            std::size_t& c = cursor[i];
            while (c < col_ptr_[i + 1] && row_idx_[c] < j) ++c;
            if (c == col_ptr_[i + 1] || row_idx_[c] != j || values_[c] != values_[k]) {
                throw std::invalid_argument("matrix is not symmetric at (" + std::to_string(i) +
                                            ", " + std::to_string(j) + ")");
            }
        }
    }
    if (lower != upper) {
        throw std::invalid_argument("matrix is not symmetric: unpaired off-diagonal entries");
    }
}

double CscSpd::entry(std::size_t i, std::size_t j) const {
    check_index(i, j);
    const auto first = row_idx_.begin() + static_cast<std::ptrdiff_t>(col_ptr_[j]);
    const auto last = row_idx_.begin() + static_cast<std::ptrdiff_t>(col_ptr_[j + 1]);
    const auto it = std::lower_bound(first, last, i);
    if (it == last || *it != i) return 0.0;
    return values_[static_cast<std::size_t>(it - row_idx_.begin())];
}

void CscSpd::column(std::size_t j, Vector& out) const {
    check_index(0, j);
    out.assign(dim(), 0.0);
    for (std::size_t k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) {
        out[row_idx_[k]] = values_[k];
    }
}

void CscSpd::matvec(const Vector& x, Vector& out) const {
    check_vector(x);
    out.assign(dim(), 0.0);
    for (std::size_t j = 0; j < dim(); ++j) {
        const double xj = x[j];
        if (xj == 0.0) continue;
        for (std::size_t k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) {
            out[row_idx_[k]] += values_[k] * xj;
        }
    }
}

void CscSpd::add_scaled_column(std::size_t j, double s, Vector& r) const {
    check_index(0, j);
    check_vector(r);
    for (std::size_t k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) {
        r[row_idx_[k]] += s * values_[k];
    }
}

// ---------------------------------------------------------------------------

DenseSpd densify(const SpdOperator& op) {
    const std::size_t n = op.dim();
    std::vector<double> data(n * n);
    Vector col;
    for (std::size_t j = 0; j < n; ++j) {
        op.column(j, col);
        for (std::size_t i = 0; i < n; ++i) data[i * n + j] = col[i];
    }
    return DenseSpd(n, std::move(data));
}

}  // namespace spm
