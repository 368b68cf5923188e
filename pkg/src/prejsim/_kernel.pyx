# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled batch engine over packed society arrays.

Mirrors interaction.step_pair exactly: every floating-point expression here
is kept textually identical (same operand order, no FMA) to the pure-Python
reference so that both engines produce bit-identical trajectories.
"""

from libc.math cimport fabs


cdef inline double clamp01(double v) noexcept nogil:
    if v > 1.0:
        v = 1.0
    if v < 0.0:
        v = 0.0
    return v


# Experience arrays are indexed [partner, observer]: faction aggregation
# walks many observers against one partner, and member ids are usually
# consecutive, so this keeps the inner loop on contiguous memory.

cdef inline double pair_opinion(double[:, :, ::1] hist, int[:, ::1] head,
                                int[:, ::1] cnt, Py_ssize_t i, Py_ssize_t j,
                                int window, double default_opinion) noexcept nogil:
    cdef int c = cnt[j, i]
    cdef int h, k, idx
    cdef double tot
    if c == 0:
        return default_opinion
    h = head[j, i]
    tot = 0.0
    for k in range(c):
        idx = h + k
        if idx >= window:
            idx -= window
        tot += hist[j, i, idx]
    return tot / c


cdef inline void record_value(double[:, :, ::1] hist, int[:, ::1] head,
                              int[:, ::1] cnt, Py_ssize_t i, Py_ssize_t j,
                              int window, double value) noexcept nogil:
    cdef int c = cnt[j, i]
    cdef int h = head[j, i]
    cdef int idx
    if c < window:
        idx = h + c
        if idx >= window:
            idx -= window
        hist[j, i, idx] = value
        cnt[j, i] = c + 1
    else:
        hist[j, i, h] = value
        head[j, i] = h + 1 if h + 1 < window else 0


cdef inline double payoff_one(double c_own, double c_other,
                              double reward, double temptation,
                              double punishment, double sucker) noexcept nogil:
    return (
        c_own * c_other * reward
        + c_own * (1.0 - c_other) * sucker
        + (1.0 - c_own) * c_other * temptation
        + (1.0 - c_own) * (1.0 - c_other) * punishment
    )


def run_steps(
    int[::1] group_of,
    int[::1] kind_of,
    int[::1] faction_of,
    double[::1] falign,
    double[::1] prosperity,
    double[:, ::1] prejudice,
    unsigned char[:, ::1] targets,
    int[::1] faction_members,
    int[::1] faction_start,
    double[:, :, ::1] hist,
    int[:, ::1] head,
    int[:, ::1] cnt,
    long[::1] pair_a,
    long[::1] pair_b,
    long[::1] snap_iters,
    double[:, :, ::1] snap_prosperity,
    double[:, :, ::1] snap_prejudice,
    double[:, :, ::1] snap_alignment,
    double reward,
    double temptation,
    double punishment,
    double sucker,
    double reinforce_threshold,
    double weaken_threshold,
    double prejudice_step,
    double alignment_step,
    double agree_lo,
    double agree_hi,
    double disagree_lo,
    double disagree_hi,
    double default_opinion,
    int record_own,
):
    """Advance the packed state through all pre-sampled pairs, in place.

    Snapshot sums are accumulated into the snap_* arrays (zeroed by the
    caller) whenever the completed-step counter hits the next snap_iters
    entry; snap_iters must be strictly increasing and end at len(pair_a).
    """
    cdef Py_ssize_t n = group_of.shape[0]
    cdef Py_ssize_t n_groups = prejudice.shape[1]
    cdef int window = hist.shape[2]
    cdef Py_ssize_t n_steps = pair_a.shape[0]
    cdef Py_ssize_t n_snaps = snap_iters.shape[0]
    cdef Py_ssize_t t, si
    cdef Py_ssize_t i, j
    cdef int gi, gj
    cdef double ci, cj, ri, rj
    cdef bint i_targets, j_targets

    si = 0
    with nogil:
        for t in range(n_steps):
            while si < n_snaps and snap_iters[si] == t:
                _snapshot(si, n, n_groups, group_of, kind_of, falign, prosperity,
                          prejudice, targets, snap_prosperity, snap_prejudice,
                          snap_alignment)
                si += 1

            i = pair_a[t]
            j = pair_b[t]
            gi = group_of[i]
            gj = group_of[j]

            ci = _cooperation(i, j, gj, n_groups, window, group_of, faction_of,
                              falign, prejudice, targets, faction_members,
                              faction_start, hist, head, cnt, default_opinion)
            cj = _cooperation(j, i, gi, n_groups, window, group_of, faction_of,
                              falign, prejudice, targets, faction_members,
                              faction_start, hist, head, cnt, default_opinion)
            ri = payoff_one(ci, cj, reward, temptation, punishment, sucker)
            rj = payoff_one(cj, ci, reward, temptation, punishment, sucker)
            prosperity[i] += ri
            prosperity[j] += rj

            if record_own:
                record_value(hist, head, cnt, i, j, window, ci)
                record_value(hist, head, cnt, j, i, window, cj)
            else:
                record_value(hist, head, cnt, i, j, window, cj)
                record_value(hist, head, cnt, j, i, window, ci)

            i_targets = targets[i, gj]
            j_targets = targets[j, gi]
            if i_targets:
                prejudice[i, gj] = _next_prejudice(
                    prejudice[i, gj], ri, reinforce_threshold, weaken_threshold,
                    prejudice_step)
            if j_targets:
                prejudice[j, gi] = _next_prejudice(
                    prejudice[j, gi], rj, reinforce_threshold, weaken_threshold,
                    prejudice_step)
            if i_targets:
                falign[i] = _next_alignment(
                    falign[i],
                    _faction_prejudice(faction_of[i], gj, prejudice, targets,
                                       faction_members, faction_start),
                    prejudice[i, gj], alignment_step,
                    agree_lo, agree_hi, disagree_lo, disagree_hi)
            if j_targets:
                falign[j] = _next_alignment(
                    falign[j],
                    _faction_prejudice(faction_of[j], gi, prejudice, targets,
                                       faction_members, faction_start),
                    prejudice[j, gi], alignment_step,
                    agree_lo, agree_hi, disagree_lo, disagree_hi)

        while si < n_snaps and snap_iters[si] == n_steps:
            _snapshot(si, n, n_groups, group_of, kind_of, falign, prosperity,
                      prejudice, targets, snap_prosperity, snap_prejudice,
                      snap_alignment)
            si += 1

    if si != n_snaps:
        raise ValueError("snapshot schedule not fully consumed")


cdef double _cooperation(Py_ssize_t agent, Py_ssize_t partner, int partner_group,
                         Py_ssize_t n_groups, int window,
                         int[::1] group_of, int[::1] faction_of,
                         double[::1] falign,
                         double[:, ::1] prejudice, unsigned char[:, ::1] targets,
                         int[::1] faction_members, int[::1] faction_start,
                         double[:, :, ::1] hist, int[:, ::1] head, int[:, ::1] cnt,
                         double default_opinion) noexcept nogil:
    cdef int fid = faction_of[agent]
    cdef Py_ssize_t lo = faction_start[fid]
    cdef Py_ssize_t hi = faction_start[fid + 1]
    cdef Py_ssize_t k
    cdef Py_ssize_t m
    cdef double eta, own, agg, tot, em, pm
    cdef double fa = falign[agent]

    eta = pair_opinion(hist, head, cnt, agent, partner, window, default_opinion)
    tot = 0.0
    if targets[agent, partner_group]:
        own = (1.0 - prejudice[agent, partner_group]) * eta
        for k in range(lo, hi):
            m = faction_members[k]
            em = pair_opinion(hist, head, cnt, m, partner, window, default_opinion)
            if targets[m, partner_group]:
                pm = prejudice[m, partner_group]
            else:
                pm = 0.0
            tot += (1.0 - pm) * em
    else:
        own = eta
        for k in range(lo, hi):
            m = faction_members[k]
            tot += pair_opinion(hist, head, cnt, m, partner, window,
                                default_opinion)
    agg = tot / (hi - lo)
    return fa * agg + (1.0 - fa) * own


cdef inline double _next_prejudice(double current, double received_payoff,
                                   double reinforce_threshold,
                                   double weaken_threshold,
                                   double step) noexcept nogil:
    if received_payoff > reinforce_threshold:
        current = current + step
    elif received_payoff < weaken_threshold:
        current = current - step
    return clamp01(current)


cdef inline double _faction_prejudice(int fid, int target_group,
                                      double[:, ::1] prejudice,
                                      unsigned char[:, ::1] targets,
                                      int[::1] faction_members,
                                      int[::1] faction_start) noexcept nogil:
    cdef Py_ssize_t lo = faction_start[fid]
    cdef Py_ssize_t hi = faction_start[fid + 1]
    cdef Py_ssize_t k
    cdef Py_ssize_t m
    cdef double tot = 0.0
    for k in range(lo, hi):
        m = faction_members[k]
        if targets[m, target_group]:
            tot += prejudice[m, target_group]
    return tot / (hi - lo)


cdef inline double _next_alignment(double current, double faction_prej,
                                   double own_prejudice, double step,
                                   double agree_lo, double agree_hi,
                                   double disagree_lo,
                                   double disagree_hi) noexcept nogil:
    cdef double b1 = agree_lo + (1.0 - current) * (agree_hi - agree_lo)
    cdef double b2 = disagree_lo + (1.0 - current) * (disagree_hi - disagree_lo)
    cdef double gap = fabs(faction_prej - own_prejudice)
    if gap < b1:
        current = current + step
    elif gap > b2:
        current = current - step
    return clamp01(current)


cdef void _snapshot(Py_ssize_t si, Py_ssize_t n, Py_ssize_t n_groups,
                    int[::1] group_of, int[::1] kind_of,
                    double[::1] falign, double[::1] prosperity,
                    double[:, ::1] prejudice, unsigned char[:, ::1] targets,
                    double[:, :, ::1] snap_prosperity,
                    double[:, :, ::1] snap_prejudice,
                    double[:, :, ::1] snap_alignment) noexcept nogil:
    cdef Py_ssize_t a, h
    cdef int g, k
    for a in range(n):
        g = group_of[a]
        k = kind_of[a]
        snap_prosperity[si, g, k] += prosperity[a]
        snap_alignment[si, g, k] += falign[a]
        for h in range(n_groups):
            if targets[a, h]:
                snap_prejudice[si, g, k] += prejudice[a, h]
