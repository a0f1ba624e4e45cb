#include "turan/json_io.hpp"

#include <ostream>

namespace turan {

nlohmann::json copy_to_json(const CycleCopy& c) {
    return nlohmann::json{{"kind", c.kind == CycleKind::Linear ? "linear" : "berge"},
                          {"edge_ids", c.edge_ids},
                          {"witness", c.witness}};
}

CycleCopy copy_from_json(const nlohmann::json& j) {
    CycleCopy c;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "linear") c.kind = CycleKind::Linear;
    else if (kind == "berge") c.kind = CycleKind::Berge;
    else throw Error(ErrorCode::ParseError, "unknown copy kind '" + kind + "'");
    c.edge_ids = j.at("edge_ids").get<std::vector<int>>();
    c.witness = j.at("witness").get<std::vector<int>>();
    return c;
}

void write_collection_jsonl(const CycleCollection& s, std::ostream& out) {
    for (const CycleCopy& c : s.copies) out << copy_to_json(c).dump() << '\n';
    nlohmann::json footer;
    footer["summary"] = true;
    footer["size"] = s.copies.size();
    footer["host_edge_count"] = s.host_edge_count;
    footer["truncated"] = s.truncated;
    if (!s.copies.empty()) footer["delta_profile"] = delta_profile(s, s.copy_length);
    else footer["delta_profile"] = nlohmann::json::array();
    out << footer.dump() << '\n';
}

nlohmann::json family_to_json(const ContainerFamily& family) {
    nlohmann::json j;
    j["ground"] = family.ground;
    j["params"] = {{"B", family.b_param},
                   {"L", family.l_param},
                   {"epsilon", family.epsilon},
                   {"achieved_epsilon", family.achieved_epsilon}};
    j["depth"] = family.depth;
    j["budget_exceeded"] = family.budget_exceeded;
    switch (family.verification) {
        case CoverVerification::Verified: j["verification"] = "verified"; break;
        case CoverVerification::Skipped: j["verification"] = "skipped"; break;
        case CoverVerification::Failed: j["verification"] = "failed"; break;
    }
    nlohmann::json containers = nlohmann::json::array();
    for (const GroundSet& c : family.containers) {
        if (family.ground <= 64) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "0x%016llx",
                          static_cast<unsigned long long>(c.words.empty() ? 0 : c.words[0]));
            containers.push_back({{"bitmap", buf}, {"size", c.count()}});
        } else {
            containers.push_back({{"edge_ids", c.elements()}, {"size", c.count()}});
        }
    }
    j["containers"] = containers;
    return j;
}

}  // namespace turan
