"""Independent reference implementations used only by the tests."""


def dfs_has_cycle(left, right, edges):
    """Cycle test on a simple bipartite graph by depth-first search."""
    adj = {("L", a): set() for a in left}
    adj.update({("R", b): set() for b in right})
    for a, b in edges:
        adj[("L", a)].add(("R", b))
        adj[("R", b)].add(("L", a))
    seen = set()
    for root in adj:
        if root in seen:
            continue
        stack = [(root, None)]
        while stack:
            v, parent = stack.pop()
            if v in seen:
                return True
            seen.add(v)
            for w in adj[v]:
                if w != parent:
                    stack.append((w, v))
    return False


def union_find_components(left, right, edges):
    parent = {("L", a): ("L", a) for a in left}
    parent.update({("R", b): ("R", b) for b in right})

    def find(v):
        while parent[v] != v:
            v = parent[v]
        return v

    for a, b in edges:
        parent[find(("L", a))] = find(("R", b))
    return len({find(v) for v in parent})


def restricted_growth_maps(k):
    """All maps range(k) -> range(j) onto their image, one per renaming class."""
    if k == 0:
        yield ()
        return

    def rec(prefix, top):
        if len(prefix) == k:
            yield tuple(prefix)
            return
        for v in range(top + 2):
            yield from rec(prefix + [v], max(top, v))

    yield from rec([0], 0)
