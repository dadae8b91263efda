"""Compiled agent pass.

Mirrors :func:`aquasim.agents.act` over all agents in id order, working on
flat arrays and a per-cell linked list of pellets (ids ascending within a
cell, so the head is always the lowest live id there).
"""

import numpy as np
from numba import njit

MULTIPLIERS = np.array([1.0, 0.5, 0.25])
DX = np.array([1, -1, 0, 0])
DY = np.array([0, 0, 1, -1])


@njit(cache=True)
def add_pellets(xs, ys, first_id, head, tail, nxt, px, py, alive):
    for k in range(xs.shape[0]):
        pid = first_id + k
        x = xs[k]
        y = ys[k]
        px[pid] = x
        py[pid] = y
        alive[pid] = True
        nxt[pid] = -1
        if head[x, y] < 0:
            head[x, y] = pid
        else:
            nxt[tail[x, y]] = pid
        tail[x, y] = pid


@njit(cache=True)
def sense(x, y, radius, head):
    """Lowest-id pellet at minimal squared distance within ``radius``, or -1."""
    w, h = head.shape
    r = int(np.floor(radius))
    r2 = radius * radius
    best = -1
    best_d2 = 0
    for dx in range(-r, r + 1):
        cx = x + dx
        if cx < 0 or cx >= w:
            continue
        for dy in range(-r, r + 1):
            cy = y + dy
            if cy < 0 or cy >= h:
                continue
            pid = head[cx, cy]
            if pid < 0:
                continue
            d2 = dx * dx + dy * dy
            if d2 > r2:
                continue
            if best < 0 or d2 < best_d2 or (d2 == best_d2 and pid < best):
                best = pid
                best_d2 = d2
    return best


@njit(cache=True)
def agent_pass(ax, ay, size, feed, disp_base, smell_base, state_table, quality,
               head, nxt, px, py, alive, uniforms, gppg, max_size):
    w, h = quality.shape
    eaten = 0
    cand_x = np.empty(4, np.int64)
    cand_y = np.empty(4, np.int64)
    ok_x = np.empty(4, np.int64)
    ok_y = np.empty(4, np.int64)
    for i in range(ax.shape[0]):
        x = ax[i]
        y = ay[i]
        m = MULTIPLIERS[state_table[i, quality[x, y]]]
        disp = max(1, int(np.floor(disp_base[i] * m)))
        pid = sense(x, y, smell_base[i] * m, head)
        if pid < 0:
            for s in range(disp):
                n_in = 0
                n_ok = 0
                for d in range(4):
                    nx = x + DX[d]
                    ny = y + DY[d]
                    if nx < 0 or nx >= w or ny < 0 or ny >= h:
                        continue
                    cand_x[n_in] = nx
                    cand_y[n_in] = ny
                    n_in += 1
                    if quality[nx, ny] != 0:
                        ok_x[n_ok] = nx
                        ok_y[n_ok] = ny
                        n_ok += 1
                u = uniforms[i, s]
                if n_ok > 0:
                    k = int(u * n_ok)
                    x = ok_x[k]
                    y = ok_y[k]
                else:
                    k = int(u * n_in)
                    x = cand_x[k]
                    y = cand_y[k]
        else:
            tx = px[pid]
            ty = py[pid]
            for s in range(disp):
                if x == tx and y == ty:
                    break
                if tx > x:
                    x += 1
                elif tx < x:
                    x -= 1
                if ty > y:
                    y += 1
                elif ty < y:
                    y -= 1
            if x == tx and y == ty:
                if head[x, y] != pid or not alive[pid]:
                    raise RuntimeError("pellet list out of sync")
                head[x, y] = nxt[pid]
                alive[pid] = False
                eaten += 1
                feed[i] += 1
                if feed[i] >= gppg:
                    feed[i] = 0
                    if size[i] < max_size:
                        size[i] += 1
        ax[i] = x
        ay[i] = y
    return eaten
