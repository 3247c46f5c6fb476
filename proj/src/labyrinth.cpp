#include "cls/labyrinth.hpp"

#include <algorithm>
#include <array>

namespace cls {

bool Labyrinth::free(std::size_t col, std::size_t row) const {
    if (col >= cols || row >= rows) return false;
    return std::find(walls.begin(), walls.end(), Cell{col, row}) == walls.end();
}

Type positionType(Cell c) {
    return Type::constructor("Pos", {Type::constructor(std::to_string(c.col)), Type::constructor(std::to_string(c.row))});
}

nlohmann::ordered_json genLabyrinth(const Labyrinth& lab) {
    for (const auto& w : lab.walls) {
        if (w.col >= lab.cols || w.row >= lab.rows) {
            throw Error("wall (" + std::to_string(w.col) + ", " + std::to_string(w.row) + ") is out of bounds");
        }
    }
    if (!lab.free(lab.start.col, lab.start.row)) {
        throw Error("start (" + std::to_string(lab.start.col) + ", " + std::to_string(lab.start.row) +
                    ") is on a wall or out of bounds");
    }

    struct Move {
        const char* name;
        int dcol;
        int drow;
    };
    constexpr std::array<Move, 4> moves{{{"up", 0, -1}, {"down", 0, 1}, {"left", -1, 0}, {"right", 1, 0}}};

    nlohmann::ordered_json combinators = nlohmann::ordered_json::array();
    for (const auto& m : moves) {
        std::vector<Type> conjuncts;
        for (std::size_t row = 0; row < lab.rows; ++row) {
            for (std::size_t col = 0; col < lab.cols; ++col) {
                if (!lab.free(col, row)) continue;
                const auto tcol = static_cast<long long>(col) + m.dcol;
                const auto trow = static_cast<long long>(row) + m.drow;
                if (tcol < 0 || trow < 0) continue;
                if (!lab.free(static_cast<std::size_t>(tcol), static_cast<std::size_t>(trow))) continue;
                conjuncts.push_back(Type::arrow(positionType({col, row}),
                                                positionType({static_cast<std::size_t>(tcol), static_cast<std::size_t>(trow)})));
            }
        }
        if (conjuncts.empty()) continue;
        nlohmann::ordered_json entry;
        entry["name"] = m.name;
        entry["type"] = Type::intersectionOf(conjuncts).text();
        combinators.push_back(std::move(entry));
    }
    nlohmann::ordered_json start;
    start["name"] = "start";
    start["type"] = positionType(lab.start).text();
    combinators.push_back(std::move(start));

    nlohmann::ordered_json doc;
    doc["combinators"] = std::move(combinators);
    doc["taxonomy"] = nlohmann::ordered_json::array();
    return doc;
}

}  // namespace cls
