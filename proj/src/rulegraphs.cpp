#include "fsr/rulegraphs.hpp"

namespace fsr {

Digraph build_edge_graph(const CompiledSpec& cs) {
    std::vector<std::string> labels;
    for (const auto& e : cs.spec.edge_types) labels.push_back(e.id);
    Digraph g(labels);
    for (size_t e = 0; e < cs.spec.edge_types.size(); ++e)
        for (const auto& s : cs.spec.edge_types[e].subdivision)
            g.add_arc(static_cast<int>(e), cs.spec.edge_index(s.id));
    g.finalize();
    return g;
}

std::string band_label(const CompiledSpec& cs, const BandKey& b) {
    return "(" + cs.spec.tile_types[b.tile].id + ";" + std::to_string(b.side_a) + "," +
           std::to_string(b.side_b) + ")";
}

std::vector<BandKey> all_bands(const CompiledSpec& cs) {
    std::vector<BandKey> out;
    for (size_t t = 0; t < cs.spec.tile_types.size(); ++t) {
        int n = cs.spec.tile_types[t].arity();
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) out.push_back({static_cast<int>(t), i, j});
    }
    return out;
}

Digraph build_band_graph(const CompiledSpec& cs) {
    std::vector<BandKey> bands = all_bands(cs);
    std::map<BandKey, int> index;
    std::vector<std::string> labels;
    for (size_t i = 0; i < bands.size(); ++i) {
        index[bands[i]] = static_cast<int>(i);
        labels.push_back(band_label(cs, bands[i]));
    }
    Digraph g(labels);
    for (const BandKey& b : bands) {
        const CompiledChart& cc = cs.charts[b.tile];
        for (size_t si = 0; si < cc.subtiles.size(); ++si) {
            const auto& st = cc.subtiles[si];
            // positions of st's boundary lying on polygon side a / side b
            for (int pa = 0; pa < static_cast<int>(st.boundary.size()); ++pa) {
                int sea = cc.sub_index.at(st.boundary[pa].id);
                if (cc.boundary_side[sea] != b.side_a) continue;
                for (int pb = 0; pb < static_cast<int>(st.boundary.size()); ++pb) {
                    int seb = cc.sub_index.at(st.boundary[pb].id);
                    if (cc.boundary_side[seb] != b.side_b) continue;
                    int ia = cc.subtile_side_image[si][pa];
                    int ib = cc.subtile_side_image[si][pb];
                    BandKey target{cc.subtile_image_type[si], std::min(ia, ib),
                                   std::max(ia, ib)};
                    g.add_arc(index.at(b), index.at(target));
                }
            }
        }
    }
    g.finalize();
    return g;
}

}  // namespace fsr
