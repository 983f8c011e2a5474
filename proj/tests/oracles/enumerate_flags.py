#!/usr/bin/env python3
# Copyright 2026 hexqec contributors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Independent count of heavy-hex qubits per code distance.

Builds the full heavy-hex device graph (rows of qubits joined by alternating
bridge qubits), places data and syndrome qubits, and routes every stabilizer
syndrome to each of its data qubits by breadth-first search that may not pass
through any other data or syndrome qubit. The union of interior path nodes is
the flag set. Path ends that are plain row qubits next to a single data qubit
and touched by no syndrome are then contracted (the bridge couples straight to
the data qubit), which is the boundary reduction used by the C++ generator.

Output is the frozen table used by tests/code_layout.test.cpp.
"""

from collections import deque


def device(d):
    n = 2 * d - 1
    width = 4 * d - 1
    nodes = set()
    edges = {}

    def link(a, b):
        edges.setdefault(a, set()).add(b)
        edges.setdefault(b, set()).add(a)

    for r in range(n):
        for x in range(width):
            nodes.add(("row", r, x))
            if x > 0:
                link(("row", r, x - 1), ("row", r, x))
    for r in range(n - 1):
        offset = 0 if r % 2 == 0 else 2
        for x in range(offset, width, 4):
            b = ("bridge", r, x)
            nodes.add(b)
            link(b, ("row", r, x))
            link(b, ("row", r + 1, x))
    return nodes, edges


def count(d):
    n = 2 * d - 1
    _, edges = device(d)
    data = {("row", r, 2 * c + 1) for r in range(n) for c in range(n) if (r + c) % 2 == 0}
    synd = {("row", r, 2 * c + 1) for r in range(n) for c in range(n) if (r + c) % 2 == 1}
    blocked = data | synd
    flags = set()
    paths = []
    for r in range(n):
        for c in range(n):
            if (r + c) % 2 == 0:
                continue
            s = ("row", r, 2 * c + 1)
            targets = []
            for dr, dc in ((-1, 0), (0, -1), (0, 1), (1, 0)):
                rr, cc = r + dr, c + dc
                if 0 <= rr < n and 0 <= cc < n:
                    targets.append(("row", rr, 2 * cc + 1))
            for t in targets:
                prev = {s: None}
                q = deque([s])
                while q:
                    u = q.popleft()
                    if u == t:
                        break
                    for v in sorted(edges[u]):
                        if v in prev:
                            continue
                        if v in blocked and v != t:
                            continue
                        prev[v] = u
                        q.append(v)
                path = []
                u = prev[t]
                while u != s:
                    path.append(u)
                    u = prev[u]
                paths.append(path)
                flags.update(path)
    # Contract chain ends that only exist to reach a boundary data qubit.
    adjacent_to_syndrome = {v for s in synd for v in edges[s]}
    contracted = set()
    for f in flags:
        if f[0] != "row" or f in adjacent_to_syndrome:
            continue
        data_neighbors = [v for v in edges[f] if v in data]
        flag_neighbors = [v for v in edges[f] if v in flags]
        if len(data_neighbors) == 1 and all(v[0] == "bridge" for v in flag_neighbors):
            contracted.add(f)
    flags -= contracted
    return len(data), len(flags), len(synd)


if __name__ == "__main__":
    for d in (3, 5, 7, 9, 11):
        nd, nf, ns = count(d)
        print(f"d={d} data={nd} flag={nf} syndrome={ns}")
