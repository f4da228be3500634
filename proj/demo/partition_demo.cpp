// Partitioning walkthrough: tile an 8x16 column-major matrix, hand the
// tiles to a 2x2 grid, then redistribute one 8x8 tile across 32 threads
// with 2 values each.

#include <iostream>

#include "tla/tla.hpp"

using namespace tla;

int main() {
    Layout data = parse_layout("(8,16):(1,8)");
    std::cout << "data layout " << format_layout(data) << ":\n"
              << render_2d(data) << "\n";

    Layout tiled = zipped_divide(data, parse_tiler("[4,8]"));
    std::cout << "zipped divide by [4,8] -> " << format_layout(tiled) << "\n"
              << "  mode 0 enumerates one 4x8 tile, mode 1 the 2x2 grid of tiles\n\n";

    Layout tile = Layout(tiled.shape()[0], tiled.stride()[0]);
    std::cout << "one tile " << format_layout(tile) << ":\n" << render_2d(tile) << "\n";

    // Thread-value assignment: 32 threads in a (4,8) arrangement, each
    // holding 2 values. Composing storage with the assignment tells every
    // thread which offsets it owns.
    Layout smem = parse_layout("(8,8):(1,8)");
    Layout tv = parse_layout("((4,8),2):((16,1),8)");
    Layout owned = compose(smem, tv);
    std::cout << "thread-value map " << format_layout(tv) << " over "
              << format_layout(smem) << " -> " << format_layout(owned) << "\n";
    for (Int t = 0; t < 4; ++t) {
        std::cout << "  thread " << t << " owns offsets";
        for (Int v = 0; v < 2; ++v) {
            std::vector<Coord> c;
            c.emplace_back(t);
            c.emplace_back(v);
            std::cout << " " << layout_eval(owned, Coord(std::move(c))).value();
        }
        std::cout << "\n";
    }

    // The same storage behind a swizzle spreads each thread's offsets
    // across banks.
    Layout swizzled = compose(parse_layout("(8,8):(f1,f9)"), tv);
    std::cout << "\nswizzled storage gives " << format_layout(swizzled) << "\n";
    return 0;
}
