#include "turan/collection.hpp"

#include <algorithm>
#include <map>

namespace turan {

std::vector<std::uint64_t> delta_profile(const CycleCollection& s, int j_max) {
    if (j_max < 1) throw Error(ErrorCode::BadParameter, "j_max must be >= 1");
    for (const CycleCopy& c : s.copies)
        if (static_cast<int>(c.edge_ids.size()) < j_max)
            throw Error(ErrorCode::BadParameter, "j_max exceeds copy length");

    std::vector<std::uint64_t> profile(static_cast<std::size_t>(j_max), 0);
    // Delta_1 through a flat per-edge array, higher j through subset maps.
    std::vector<std::uint64_t> edge_load(static_cast<std::size_t>(s.host_edge_count), 0);
    for (const CycleCopy& c : s.copies)
        for (int id : c.edge_ids) ++edge_load[static_cast<std::size_t>(id)];
    for (std::uint64_t load : edge_load) profile[0] = std::max(profile[0], load);

    for (int j = 2; j <= j_max; ++j) {
        std::map<std::vector<int>, std::uint64_t> loads;
        std::vector<int> pick(static_cast<std::size_t>(j));
        for (const CycleCopy& c : s.copies) {
            std::vector<int> ids = c.edge_ids;
            std::sort(ids.begin(), ids.end());
            const int len = static_cast<int>(ids.size());
            for (int i = 0; i < j; ++i) pick[static_cast<std::size_t>(i)] = i;
            while (true) {
                std::vector<int> subset(static_cast<std::size_t>(j));
                for (int i = 0; i < j; ++i)
                    subset[static_cast<std::size_t>(i)] = ids[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])];
                std::uint64_t& load = loads[subset];
                ++load;
                profile[static_cast<std::size_t>(j - 1)] =
                    std::max(profile[static_cast<std::size_t>(j - 1)], load);
                int i = j - 1;
                while (i >= 0 && pick[static_cast<std::size_t>(i)] == len - j + i) --i;
                if (i < 0) break;
                ++pick[static_cast<std::size_t>(i)];
                for (int t = i + 1; t < j; ++t)
                    pick[static_cast<std::size_t>(t)] = pick[static_cast<std::size_t>(t - 1)] + 1;
            }
        }
    }
    return profile;
}

}  // namespace turan
