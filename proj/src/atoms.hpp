#pragma once

// Condition (1) in both readings.

#include <optional>
#include <string>
#include <vector>

#include "asimkit/asimulation.hpp"

namespace asimkit::detail {

class AtomTest {
 public:
  explicit AtomTest(const Vocabulary& vocab);

  /// The first atom true on the left and false on the right, rendered with
  /// left-model ids, or nothing. `b` and `d` hold `l` elements each.
  std::optional<std::string> failure(AtomMode mode, const FoModel& left, Element a, const Element* b,
                                     const FoModel& right, Element c, const Element* d, int l) const;

 private:
  struct Letter {
    int id;
    int arity;
    std::string name;
  };
  std::vector<Letter> letters_;
};

}  // namespace asimkit::detail
