#pragma once

// Spectrum tables (energy, multiplicity, provenance) and the comparison
// report shared by the algebraic, closed-form-oracle, and numeric pipelines.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace polysym {

enum class provenance { algebraic, oracle, numeric };

inline const char* provenance_name(provenance p) {
    switch (p) {
        case provenance::algebraic: return "algebraic";
        case provenance::oracle: return "oracle";
        case provenance::numeric: return "numeric";
    }
    return "?";
}

struct spectrum_row {
    double energy = 0.0;
    int multiplicity = 1;
    provenance origin = provenance::algebraic;
    std::string label;  // contributing branch / quantum numbers, free-form
};

struct spectrum_table {
    std::vector<spectrum_row> rows;  // sorted ascending in energy

    void sort() {
        std::stable_sort(rows.begin(), rows.end(),
                         [](const spectrum_row& a, const spectrum_row& b) {
                             return a.energy < b.energy;
                         });
    }

    // Collapse rows closer than rel_tol (relative, floored at 1): energies
    // average weighted by multiplicity, multiplicities add.
    void merge(double rel_tol) {
        sort();
        std::vector<spectrum_row> out;
        for (const auto& r : rows) {
            if (!out.empty()) {
                auto& last = out.back();
                double scale = std::max({1.0, std::fabs(last.energy), std::fabs(r.energy)});
                if (std::fabs(r.energy - last.energy) <= rel_tol * scale) {
                    double wa = last.multiplicity, wb = r.multiplicity;
                    last.energy = (last.energy * wa + r.energy * wb) / (wa + wb);
                    last.multiplicity += r.multiplicity;
                    // '+' keeps merged labels a single CSV field.
                    if (!r.label.empty() && last.label != r.label &&
                        last.label.find(r.label) == std::string::npos)
                        last.label += "+" + r.label;
                    continue;
                }
            }
            out.push_back(r);
        }
        rows = std::move(out);
    }

    void truncate_above(double e_max) {
        std::erase_if(rows, [&](const spectrum_row& r) { return r.energy > e_max; });
    }

    std::size_t total_states() const {
        std::size_t n = 0;
        for (const auto& r : rows) n += static_cast<std::size_t>(r.multiplicity);
        return n;
    }
};

// Two views of "do these spectra agree":
//  * value-matched: rows paired when energies coincide within match_tol —
//    the strict comparison used against oracles,
//  * index-aligned: rows paired by position, a constant offset fitted, and
//    the residual after removing it — used when two pipelines share spacing
//    structure but not the energy origin.
struct spectrum_comparison {
    // value-matched section
    std::size_t paired = 0;
    double max_rel_dev = 0.0;
    int multiplicity_mismatches = 0;
    std::size_t unmatched_a = 0;
    std::size_t unmatched_b = 0;
    // index-aligned section
    std::size_t aligned = 0;
    double offset = 0.0;                // mean(b - a)
    double post_offset_max_dev = 0.0;   // max |a + offset - b|
    int aligned_multiplicity_mismatches = 0;

    bool value_matched_equal(double tol) const {
        return unmatched_a == 0 && unmatched_b == 0 && multiplicity_mismatches == 0 &&
               max_rel_dev <= tol;
    }
};

// Direct-sum assembly: all pairwise sums ex[i] + ey[j] up to e_max, merged
// into levels with degeneracies.  Truncation-aware only in the sense of its
// inputs — sums above e_max are dropped, and multiplicities are exact for the
// 1D level lists actually supplied.
inline spectrum_table assemble_2d(const std::vector<double>& ex, const std::vector<double>& ey,
                                  double e_max, double merge_rel_tol,
                                  provenance origin = provenance::oracle) {
    spectrum_table t;
    for (std::size_t i = 0; i < ex.size(); ++i)
        for (std::size_t j = 0; j < ey.size(); ++j) {
            double e = ex[i] + ey[j];
            if (e <= e_max + 1e-12 * std::max(1.0, std::fabs(e_max)))
                t.rows.push_back({e, 1, origin,
                                  "nx" + std::to_string(i) + ",ny" + std::to_string(j)});
        }
    t.merge(merge_rel_tol);
    return t;
}

inline spectrum_comparison compare_spectra(const spectrum_table& a, const spectrum_table& b,
                                           double match_tol) {
    spectrum_comparison c;

    // Value matching: two sorted pointers, pair when within tolerance.
    std::size_t i = 0, j = 0;
    while (i < a.rows.size() && j < b.rows.size()) {
        double ea = a.rows[i].energy, eb = b.rows[j].energy;
        double scale = std::max({1.0, std::fabs(ea), std::fabs(eb)});
        if (std::fabs(ea - eb) <= match_tol * scale) {
            ++c.paired;
            c.max_rel_dev = std::max(c.max_rel_dev, std::fabs(ea - eb) / scale);
            if (a.rows[i].multiplicity != b.rows[j].multiplicity)
                ++c.multiplicity_mismatches;
            ++i;
            ++j;
        } else if (ea < eb) {
            ++c.unmatched_a;
            ++i;
        } else {
            ++c.unmatched_b;
            ++j;
        }
    }
    c.unmatched_a += a.rows.size() - i;
    c.unmatched_b += b.rows.size() - j;

    // Index alignment over the common prefix.
    c.aligned = std::min(a.rows.size(), b.rows.size());
    if (c.aligned > 0) {
        double sum = 0.0;
        for (std::size_t k = 0; k < c.aligned; ++k)
            sum += b.rows[k].energy - a.rows[k].energy;
        c.offset = sum / static_cast<double>(c.aligned);
        for (std::size_t k = 0; k < c.aligned; ++k) {
            c.post_offset_max_dev = std::max(
                c.post_offset_max_dev,
                std::fabs(a.rows[k].energy + c.offset - b.rows[k].energy));
            if (a.rows[k].multiplicity != b.rows[k].multiplicity)
                ++c.aligned_multiplicity_mismatches;
        }
    }
    return c;
}

}  // namespace polysym
