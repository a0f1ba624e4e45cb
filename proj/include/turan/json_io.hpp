#ifndef TURAN_JSON_IO_HPP
#define TURAN_JSON_IO_HPP

#include <iosfwd>

#include <json.hpp>

#include "turan/collection.hpp"
#include "turan/containers.hpp"

namespace turan {

nlohmann::json copy_to_json(const CycleCopy& c);
CycleCopy copy_from_json(const nlohmann::json& j);

// JSON-lines: one copy per line, then a summary footer with |S| and the
// Delta profile.
void write_collection_jsonl(const CycleCollection& s, std::ostream& out);

nlohmann::json family_to_json(const ContainerFamily& family);

}  // namespace turan

#endif
