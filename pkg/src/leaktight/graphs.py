"""Small graph utilities shared across modules."""

from __future__ import annotations

from typing import Callable, Sequence

__all__ = ["strongly_connected_components"]


def strongly_connected_components(
    count: int, successors: Callable[[int], Sequence[int]]
) -> list[list[int]]:
    """Tarjan's algorithm, iteratively, over nodes 0..count-1.

    Components are emitted in reverse topological order (a component appears
    before any component that can reach it), each sorted ascending.
    """
    index_of = [-1] * count
    low = [0] * count
    on_stack = [False] * count
    stack: list[int] = []
    components: list[list[int]] = []
    counter = 0

    for root in range(count):
        if index_of[root] != -1:
            continue
        work: list[tuple[int, int]] = [(root, 0)]
        while work:
            node, child_pos = work.pop()
            if child_pos == 0:
                index_of[node] = low[node] = counter
                counter += 1
                stack.append(node)
                on_stack[node] = True
            advanced = False
            succ = successors(node)
            for k in range(child_pos, len(succ)):
                child = succ[k]
                if index_of[child] == -1:
                    work.append((node, k + 1))
                    work.append((child, 0))
                    advanced = True
                    break
                if on_stack[child]:
                    low[node] = min(low[node], index_of[child])
            if advanced:
                continue
            if low[node] == index_of[node]:
                component = []
                while True:
                    member = stack.pop()
                    on_stack[member] = False
                    component.append(member)
                    if member == node:
                        break
                component.sort()
                components.append(component)
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
    return components
