#include <mutex>

#include "loops/error.hpp"
#include "loops/iso.hpp"
#include "loops/modification.hpp"

namespace loops {

const std::vector<SuitableGroupClass>& suitable_group_classes() {
  static std::vector<SuitableGroupClass> classes;
  static std::once_flag once;
  std::call_once(once, [] {
    std::vector<LoopTable> tables;
    tables.reserve(512);
    for (unsigned s = 0; s < 512; ++s) tables.push_back(group64(s).table);
    // classes come back ordered by least member, so s = 0 is class 1
    const auto groups = isomorphism_classes(tables);
    unsigned idx = 1;
    for (const auto& g : groups) {
      SuitableGroupClass c{idx++, static_cast<unsigned>(g.front()), {}};
      for (auto m : g) c.members.push_back(static_cast<unsigned>(m));
      classes.push_back(std::move(c));
    }
  });
  return classes;
}

Group64 suitable_group(unsigned class_index) {
  const auto& classes = suitable_group_classes();
  if (class_index < 1 || class_index > classes.size())
    throw Error(Errc::InvalidArgument, "suitable group class must be in 1.." +
                                           std::to_string(classes.size()));
  return group64(classes[class_index - 1].representative);
}

}  // namespace loops
