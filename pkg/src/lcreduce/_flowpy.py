"""Pure-Python Edmonds-Karp augmentation; fallback for ``_flowcore``."""

from __future__ import annotations


def augment(n, start, adj, head, cap, s, t, limit):
    """Push flow from ``s`` to ``t`` until no augmenting path remains.

    ``cap`` holds residual capacities and is updated in place; arc ``e`` and
    ``e ^ 1`` are mutual reverses. A negative ``limit`` means unbounded.
    Returns the amount of flow pushed.
    """
    total = 0
    parent = [-1] * n
    while limit < 0 or total < limit:
        for i in range(n):
            parent[i] = -1
        parent[s] = -2
        queue = [s]
        qh = 0
        found = False
        while qh < len(queue) and not found:
            x = queue[qh]
            qh += 1
            for i in range(start[x], start[x + 1]):
                e = adj[i]
                if cap[e] > 0:
                    y = head[e]
                    if parent[y] == -1:
                        parent[y] = e
                        if y == t:
                            found = True
                            break
                        queue.append(y)
        if not found:
            break
        push = -1
        y = t
        while y != s:
            e = parent[y]
            if push < 0 or cap[e] < push:
                push = cap[e]
            y = head[e ^ 1]
        if limit >= 0 and push > limit - total:
            push = limit - total
        y = t
        while y != s:
            e = parent[y]
            cap[e] -= push
            cap[e ^ 1] += push
            y = head[e ^ 1]
        total += push
    return total
