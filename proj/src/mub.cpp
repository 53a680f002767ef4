// Copyright 2026 The mubqct Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mubqct/mub.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "mubqct/errors.hpp"
#include "mubqct/format.hpp"
#include "mubqct/galois_field.hpp"

namespace mubqct::galois {

Dimension Dimension::from_exponent(int k) {
    if (k < 1 || k > kMaxExponent) {
        throw std::out_of_range("dimension exponent k must be in [1, 16], got " +
                                std::to_string(k));
    }
    return Dimension(k);
}

Dimension Dimension::from_size(std::size_t d) {
    if (d < 2 || !std::has_single_bit(d) || d > (std::size_t{1} << kMaxExponent)) {
        throw std::invalid_argument("dimension must be a power of two in [2, 65536], got " +
                                    std::to_string(d));
    }
    return Dimension(std::countr_zero(d));
}

MubFamily::MubFamily(Dimension dim, std::vector<CMatrix> bases)
    : dim_(dim), bases_(std::move(bases)) {
    const auto d = static_cast<Eigen::Index>(dim_.size());
    if (bases_.size() != dim_.basis_count()) {
        throw std::invalid_argument("MubFamily: expected d+1 bases");
    }
    for (const auto& b : bases_) {
        if (b.rows() != d || b.cols() != d) {
            throw std::invalid_argument("MubFamily: every basis must be a d x d matrix");
        }
    }
}

const CMatrix& MubFamily::basis(std::size_t theta) const {
    if (theta >= bases_.size()) {
        throw std::out_of_range("basis index " + std::to_string(theta) + " out of range");
    }
    return bases_[theta];
}

namespace {

// First nonzero component of each column made real and nonnegative.
void normalize_phases(CMatrix& basis) {
    for (Eigen::Index c = 0; c < basis.cols(); ++c) {
        for (Eigen::Index r = 0; r < basis.rows(); ++r) {
            const Complex z = basis(r, c);
            if (std::abs(z) > 1e-12) {
                if (z.imag() != 0.0 || z.real() < 0.0) {
                    basis.col(c) *= std::conj(z) / std::abs(z);
                    basis(r, c) = Complex(std::abs(z), 0.0);
                }
                break;
            }
        }
    }
}

CMatrix stabilizer_basis(const Gf2k& field, std::uint32_t s) {
    const int k = field.exponent();
    const std::size_t d = std::size_t{1} << k;

    // Symmetric bilinear form (x, y) -> Tr(s x y) in the polynomial basis.
    std::vector<std::uint32_t> form(static_cast<std::size_t>(k * k));
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            form[static_cast<std::size_t>(i * k + j)] =
                field.trace(field.mul(s, field.mul(1u << i, 1u << j)));
        }
    }

    static constexpr Complex kPowersOfI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));

    CMatrix basis(d, d);
    for (std::size_t x = 0; x < d; ++x) {
        unsigned quad = 0;
        for (int i = 0; i < k; ++i) {
            if (!((x >> i) & 1u)) continue;
            quad += form[static_cast<std::size_t>(i * k + i)];
            for (int j = i + 1; j < k; ++j) {
                if ((x >> j) & 1u) quad += 2 * form[static_cast<std::size_t>(i * k + j)];
            }
        }
        const Complex phase = kPowersOfI[quad & 3u];
        for (std::size_t c = 0; c < d; ++c) {
            const double sign = (std::popcount(c & x) & 1) ? -1.0 : 1.0;
            basis(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(c)) = sign * amp * phase;
        }
    }
    return basis;
}

}  // namespace

MubFamily build_mub_family(int k) {
    if (k < 1 || k > Dimension::kMaxExponent) {
        throw std::out_of_range("build_mub_family: k must be in [1, 16], got " + std::to_string(k));
    }
    if (k > kMaxFamilyExponent) {
        throw CapabilityError("explicit MUB construction is capped at k = 8 (d = 256), got k = " +
                              std::to_string(k));
    }
    const Gf2k field(k);
    const Dimension dim = Dimension::from_exponent(k);
    const auto d = static_cast<Eigen::Index>(dim.size());

    std::vector<CMatrix> bases;
    bases.reserve(dim.basis_count());
    bases.push_back(CMatrix::Identity(d, d));
    for (std::uint32_t s = 0; s < field.order(); ++s) {
        CMatrix b = stabilizer_basis(field, s);
        normalize_phases(b);
        bases.push_back(std::move(b));
    }
    return MubFamily(dim, std::move(bases));
}

VerificationReport verify_unbiasedness(const MubFamily& family, double tol) {
    VerificationReport rep;
    rep.tolerance = tol;
    const std::size_t nb = family.basis_count();
    const std::size_t d = family.d();
    const double target = 1.0 / std::sqrt(static_cast<double>(d));

    for (std::size_t t = 0; t < nb; ++t) {
        const CMatrix& b = family.basis(t);
        const CMatrix gram = b.adjoint() * b;
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                const Complex g = gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
                const double dev = i == j ? std::abs(std::sqrt(std::abs(g)) - 1.0) : std::abs(g);
                if (dev > rep.max_orthonormality_deviation) {
                    rep.max_orthonormality_deviation = dev;
                    rep.orth_theta = t;
                    rep.orth_i = i;
                    rep.orth_j = j;
                }
            }
        }
    }

    for (std::size_t t1 = 0; t1 < nb; ++t1) {
        for (std::size_t t2 = t1 + 1; t2 < nb; ++t2) {
            const CMatrix overlaps = family.basis(t1).adjoint() * family.basis(t2);
            for (std::size_t i = 0; i < d; ++i) {
                for (std::size_t j = 0; j < d; ++j) {
                    const double dev = std::abs(
                        std::abs(overlaps(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))) -
                        target);
                    if (dev > rep.max_unbiasedness_deviation) {
                        rep.max_unbiasedness_deviation = dev;
                        rep.unbiased_theta1 = t1;
                        rep.unbiased_theta2 = t2;
                        rep.unbiased_i = i;
                        rep.unbiased_j = j;
                    }
                }
            }
        }
    }

    rep.passed = rep.max_orthonormality_deviation <= tol && rep.max_unbiasedness_deviation <= tol;
    return rep;
}

CVector basis_state(const MubFamily& family, std::size_t theta, std::size_t i) {
    if (theta >= family.basis_count()) {
        throw std::out_of_range("basis_state: theta " + std::to_string(theta) + " out of range");
    }
    if (i >= family.d()) {
        throw std::out_of_range("basis_state: vector index " + std::to_string(i) + " out of range");
    }
    return family.basis(theta).col(static_cast<Eigen::Index>(i));
}

void write_family_text(std::ostream& out, const MubFamily& family) {
    const std::size_t d = family.d();
    out << "d=" << d << " bases=" << family.basis_count() << '\n';
    for (std::size_t t = 0; t < family.basis_count(); ++t) {
        const CMatrix& b = family.basis(t);
        for (std::size_t i = 0; i < d; ++i) {
            out << t << ' ' << i;
            for (std::size_t r = 0; r < d; ++r) {
                const Complex z = b(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i));
                out << ' ' << format_sig(z.real(), 17) << ' ' << format_sig(z.imag(), 17);
            }
            out << '\n';
        }
    }
}

MubFamily read_family_text(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("family text: missing header");
    std::size_t d = 0, nb = 0;
    if (std::sscanf(header.c_str(), "d=%zu bases=%zu", &d, &nb) != 2) {
        throw std::runtime_error("family text: malformed header '" + header + "'");
    }
    const Dimension dim = Dimension::from_size(d);
    if (nb != dim.basis_count()) throw std::runtime_error("family text: basis count must be d+1");

    std::vector<CMatrix> bases(nb, CMatrix::Zero(static_cast<Eigen::Index>(d),
                                                 static_cast<Eigen::Index>(d)));
    std::string line;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        ls.imbue(std::locale::classic());
        std::size_t t = 0, i = 0;
        if (!(ls >> t >> i) || t >= nb || i >= d) {
            throw std::runtime_error("family text: bad vector line " + std::to_string(rows + 2));
        }
        for (std::size_t r = 0; r < d; ++r) {
            double re = 0, im = 0;
            if (!(ls >> re >> im)) throw std::runtime_error("family text: short vector line");
            bases[t](static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) = Complex(re, im);
        }
        ++rows;
    }
    if (rows != nb * d) throw std::runtime_error("family text: expected (d+1)*d vector lines");
    return MubFamily(dim, std::move(bases));
}

}  // namespace mubqct::galois
