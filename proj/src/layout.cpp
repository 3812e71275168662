#include "citenet/layout.hpp"

#include <cmath>

#include "citenet/error.hpp"
#include "citenet/rng.hpp"

namespace citenet {

std::vector<Point> force_layout(const CitationGraph& g, const LayoutOptions& options) {
    const std::size_t n = g.node_count();
    if (!(options.spring_length > 0.0)) throw InvalidArgument("layout: spring length must be positive");
    std::vector<Point> pos(n);
    if (n <= 1) return pos;

    const double k = options.spring_length;
    const double extent = k * std::sqrt(static_cast<double>(n));
    Rng rng(derive_seed(options.seed, 0x1a70));
    for (auto& p : pos) {
        p.x = (rng.uniform() - 0.5) * extent;
        p.y = (rng.uniform() - 0.5) * extent;
    }

    std::vector<Point> disp(n);
    const double start_temp = extent / 10.0;
    const std::size_t iterations = std::max<std::size_t>(options.iterations, 1);
    for (std::size_t it = 0; it < iterations; ++it) {
        const double temp = start_temp * (1.0 - static_cast<double>(it) / static_cast<double>(iterations)) + 1e-6 * k;
        std::fill(disp.begin(), disp.end(), Point{});
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                double dx = pos[i].x - pos[j].x, dy = pos[i].y - pos[j].y;
                double d2 = dx * dx + dy * dy;
                if (d2 < 1e-18) {
                    // Coincident points: nudge apart along a deterministic direction.
                    dx = 1e-6 * k * static_cast<double>(1 + (i % 7));
                    dy = 1e-6 * k * static_cast<double>(1 + (j % 5));
                    d2 = dx * dx + dy * dy;
                }
                const double f = k * k / d2;  // (k^2 / d) along the unit vector
                disp[i].x += dx * f;
                disp[i].y += dy * f;
                disp[j].x -= dx * f;
                disp[j].y -= dy * f;
            }
        }
        for (NodeId u = 0; u < n; ++u) {
            for (NodeId v : g.neighbors(u)) {
                if (v <= u) continue;
                const double dx = pos[u].x - pos[v].x, dy = pos[u].y - pos[v].y;
                const double d = std::sqrt(dx * dx + dy * dy);
                const double f = d / k;  // (d^2 / k) along the unit vector
                disp[u].x -= dx * f;
                disp[u].y -= dy * f;
                disp[v].x += dx * f;
                disp[v].y += dy * f;
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            const double len = std::sqrt(disp[i].x * disp[i].x + disp[i].y * disp[i].y);
            if (len <= 0.0) continue;
            const double step = std::min(len, temp) / len;
            pos[i].x += disp[i].x * step;
            pos[i].y += disp[i].y * step;
        }
    }

    Point centre;
    for (const auto& p : pos) {
        centre.x += p.x;
        centre.y += p.y;
    }
    centre.x /= static_cast<double>(n);
    centre.y /= static_cast<double>(n);
    for (auto& p : pos) {
        p.x -= centre.x;
        p.y -= centre.y;
    }
    return pos;
}

}  // namespace citenet
