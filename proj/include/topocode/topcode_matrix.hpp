#pragma once

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "topocode/graph.hpp"

namespace topocode {

/// 3 x q matrix of (x, e, y) columns, one column per edge.
struct TopcodeMatrix {
    std::vector<Color> x_row;
    std::vector<Color> e_row;
    std::vector<Color> y_row;

    std::size_t size() const { return e_row.size(); }

    void require_valid() const {
        if (x_row.size() != e_row.size() || y_row.size() != e_row.size())
            throw std::invalid_argument("Topcode matrix rows differ in length");
        for (std::size_t i = 0; i < size(); ++i)
            if (x_row[i] < 0 || e_row[i] < 0 || y_row[i] < 0)
                throw std::invalid_argument("Topcode matrix entries must be non-negative");
    }

    std::set<Color> vertex_entries() const {
        std::set<Color> out(x_row.begin(), x_row.end());
        out.insert(y_row.begin(), y_row.end());
        return out;
    }

    bool operator==(const TopcodeMatrix& o) const {
        return x_row == o.x_row && e_row == o.e_row && y_row == o.y_row;
    }
};

/// True iff the E row, as a set, is exactly {1, 3, ..., 2q-1}.
inline bool matrix_odd_edge_exact(const TopcodeMatrix& m) {
    std::vector<Color> e = m.e_row;
    std::sort(e.begin(), e.end());
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] != static_cast<Color>(2 * i + 1)) return false;
    return true;
}

/// True iff every column satisfies e = |x - y|.
inline bool matrix_is_graceful(const TopcodeMatrix& m) {
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m.e_row[i] != std::abs(m.x_row[i] - m.y_row[i])) return false;
    return m.size() > 0;
}

}  // namespace topocode
