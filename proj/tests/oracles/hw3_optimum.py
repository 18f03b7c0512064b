# Copyright 2026 The smallvalues Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


"""Exact optimum of the three-vector bound over real delta (independent oracle).

For n = 3 the bound is ceil(C0/d0) + ceil(C1(E1)/d1) with d1 at the top of
the search box. Fix the integer value c0 of the first term; the smallest
next exponent achieving it is E1 = (3*C0 + c0*E)/(c0 - C0), and the second
term is increasing in E1, so the optimum is min over c0 of c0 + term2(E1).
"""
from fractions import Fraction as F
import sys


def ceil(q):
    return -((-q.numerator) // q.denominator)


def optimum(E, top=1 - F(1, 10**12)):
    s0 = 1 + ceil((E + 3) * 3)
    C0 = F(s0 * (s0 + 1)) * (E + 3) / 2
    best = None
    c0 = ceil(C0)
    while best is None or c0 <= best[0]:
        c0 += 1
        e1 = (3 * C0 + c0 * E) / (c0 - C0)
        s1 = 1 + ceil(e1 + 3)
        total = c0 + ceil(F(s1 * (s1 + 1)) * (e1 + 3) / (2 * top))
        if best is None or total < best[0]:
            best = (total, c0)
    return best


if __name__ == "__main__":
    eps = F(1, 10**13)
    for label, E in [("24+eps", 24 + eps), ("13.875+eps", F("13.875") + eps),
                     ("41.132", F("41.132"))]:
        print(label, optimum(E))
