#ifndef CLS_LABYRINTH_HPP
#define CLS_LABYRINTH_HPP

#include <cstddef>
#include <vector>

#include <nlohmann/json.hpp>

#include "cls/types.hpp"

namespace cls {

// Grid cell; types read Pos(col, row) with row 0 at the top.
struct Cell {
    std::size_t col = 0;
    std::size_t row = 0;

    friend bool operator==(const Cell&, const Cell&) = default;
    friend auto operator<=>(const Cell&, const Cell&) = default;
};

struct Labyrinth {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Cell> walls;
    Cell start;

    bool free(std::size_t col, std::size_t row) const;
};

Type positionType(Cell c);

/*
 * Repository document with combinators up, down, left and right (one arrow
 * conjunct per legal move, row-major by source cell; omitted when there is
 * no move) followed by `start : Pos(start)`.
 */
nlohmann::ordered_json genLabyrinth(const Labyrinth& labyrinth);

}  // namespace cls

#endif
