// Copyright 2026 The Relic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Hand-constructed confusion matrices with their expected ratios written as
// exact fractions.

#ifndef RELIC_TESTS_CONFUSION_CASES_H_
#define RELIC_TESTS_CONFUSION_CASES_H_

#include <array>
#include <cstddef>
#include <optional>

namespace relic::cases {

struct Ratio {
  std::size_t num = 0;
  std::size_t den = 0;  // 0 marks an undefined ratio

  std::optional<double> value() const {
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
  }
};

inline constexpr Ratio kUndefined{};

struct ConfusionCase {
  std::size_t tp, tn, fp, fn;
  Ratio recall, precision, accuracy;
};

inline constexpr std::array<ConfusionCase, 50> kConfusionCases = {{
    {4, 0, 1, 0, Ratio{4, 4}, Ratio{4, 5}, Ratio{4, 5}},
    {4, 16, 0, 0, Ratio{4, 4}, Ratio{4, 4}, Ratio{20, 20}},
    {0, 8, 0, 2, Ratio{0, 2}, kUndefined, Ratio{8, 10}},
    {0, 0, 0, 0, kUndefined, kUndefined, kUndefined},
    {0, 10, 0, 0, kUndefined, kUndefined, Ratio{10, 10}},
    {3, 0, 0, 0, Ratio{3, 3}, Ratio{3, 3}, Ratio{3, 3}},
    {0, 0, 5, 0, kUndefined, Ratio{0, 5}, Ratio{0, 5}},
    {0, 0, 0, 6, Ratio{0, 6}, kUndefined, Ratio{0, 6}},
    {1, 1, 1, 1, Ratio{1, 2}, Ratio{1, 2}, Ratio{2, 4}},
    {2, 30, 2, 0, Ratio{2, 2}, Ratio{2, 4}, Ratio{32, 34}},
    {8, 372, 12, 0, Ratio{8, 8}, Ratio{8, 20}, Ratio{380, 392}},
    {4, 14, 2, 0, Ratio{4, 4}, Ratio{4, 6}, Ratio{18, 20}},
    {5, 438, 10, 0, Ratio{5, 5}, Ratio{5, 15}, Ratio{443, 453}},
    {3, 471, 9, 0, Ratio{3, 3}, Ratio{3, 12}, Ratio{474, 483}},
    {1, 0, 0, 1, Ratio{1, 2}, Ratio{1, 1}, Ratio{1, 2}},
    {0, 3, 3, 0, kUndefined, Ratio{0, 3}, Ratio{3, 6}},
    {7, 7, 0, 7, Ratio{7, 14}, Ratio{7, 7}, Ratio{14, 21}},
    {10, 90, 0, 0, Ratio{10, 10}, Ratio{10, 10}, Ratio{100, 100}},
    {0, 95, 5, 0, kUndefined, Ratio{0, 5}, Ratio{95, 100}},
    {1, 99, 0, 0, Ratio{1, 1}, Ratio{1, 1}, Ratio{100, 100}},
    {4, 1, 5, 512, Ratio{4, 516}, Ratio{4, 9}, Ratio{5, 522}},
    {0, 0, 13, 0, kUndefined, Ratio{0, 13}, Ratio{0, 13}},
    {4, 40, 0, 13, Ratio{4, 17}, Ratio{4, 4}, Ratio{44, 57}},
    {2, 0, 0, 5, Ratio{2, 7}, Ratio{2, 2}, Ratio{2, 7}},
    {5, 0, 2, 0, Ratio{5, 5}, Ratio{5, 7}, Ratio{5, 7}},
    {13, 5, 0, 40, Ratio{13, 53}, Ratio{13, 13}, Ratio{18, 58}},
    {0, 2, 512, 512, Ratio{0, 512}, Ratio{0, 512}, Ratio{2, 1026}},
    {40, 0, 40, 40, Ratio{40, 80}, Ratio{40, 80}, Ratio{40, 120}},
    {13, 1, 3, 5, Ratio{13, 18}, Ratio{13, 16}, Ratio{14, 22}},
    {1, 13, 0, 40, Ratio{1, 41}, Ratio{1, 1}, Ratio{14, 54}},
    {3, 13, 512, 1, Ratio{3, 4}, Ratio{3, 515}, Ratio{16, 529}},
    {0, 40, 40, 512, Ratio{0, 512}, Ratio{0, 40}, Ratio{40, 592}},
    {2, 4, 0, 13, Ratio{2, 15}, Ratio{2, 2}, Ratio{6, 19}},
    {0, 40, 0, 40, Ratio{0, 40}, kUndefined, Ratio{40, 80}},
    {2, 8, 512, 13, Ratio{2, 15}, Ratio{2, 514}, Ratio{10, 535}},
    {5, 4, 8, 40, Ratio{5, 45}, Ratio{5, 13}, Ratio{9, 57}},
    {8, 4, 3, 2, Ratio{8, 10}, Ratio{8, 11}, Ratio{12, 17}},
    {1, 2, 0, 40, Ratio{1, 41}, Ratio{1, 1}, Ratio{3, 43}},
    {3, 13, 8, 4, Ratio{3, 7}, Ratio{3, 11}, Ratio{16, 28}},
    {8, 3, 40, 0, Ratio{8, 8}, Ratio{8, 48}, Ratio{11, 51}},
    {0, 13, 5, 1, Ratio{0, 1}, Ratio{0, 5}, Ratio{13, 19}},
    {4, 1, 8, 5, Ratio{4, 9}, Ratio{4, 12}, Ratio{5, 18}},
    {0, 512, 0, 13, Ratio{0, 13}, kUndefined, Ratio{512, 525}},
    {40, 4, 4, 4, Ratio{40, 44}, Ratio{40, 44}, Ratio{44, 52}},
    {40, 8, 40, 8, Ratio{40, 48}, Ratio{40, 80}, Ratio{48, 96}},
    {0, 0, 3, 8, Ratio{0, 8}, Ratio{0, 3}, Ratio{0, 11}},
    {512, 0, 0, 3, Ratio{512, 515}, Ratio{512, 512}, Ratio{512, 515}},
    {512, 40, 512, 8, Ratio{512, 520}, Ratio{512, 1024}, Ratio{552, 1072}},
    {3, 5, 512, 4, Ratio{3, 7}, Ratio{3, 515}, Ratio{8, 524}},
    {0, 8, 4, 1, Ratio{0, 1}, Ratio{0, 4}, Ratio{8, 13}},
}};

}  // namespace relic::cases

#endif  // RELIC_TESTS_CONFUSION_CASES_H_
