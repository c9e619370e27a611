#ifndef PRICED_SORT_BACKBONE_HPP
#define PRICED_SORT_BACKBONE_HPP

#include "priced_sort/oracle.hpp"

#include <array>
#include <cstdint>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace priced_sort {

/// Raised when an algorithm-internal invariant breaks. Indicates a bug, not bad input.
struct InvariantError : std::logic_error {
    using std::logic_error::logic_error;
};

/*
 * Keys of the representative's color known to lie strictly between the
 * representative's two backbone neighbours. The representative itself is not
 * a member but always counts as sampled.
 *
 * The first `sampled` entries of `members` form the sample; the rest are
 * unsampled, so a uniform unsampled draw is a uniform index in the tail.
 */
struct Bucket {
    KeyId rep = kRedSentinel;
    Color color = kRed;
    std::vector<KeyId> members;
    std::size_t sampled = 0;
    KeyId sample_max = kRedSentinel;
    KeyId sample_min = kRedSentinel;
    Price credit;

    void reset_sample() {
        sampled = 0;
        sample_max = sample_min = rep;
        credit = Price();
    }
    bool exhausted() const { return sampled >= members.size(); }
};

enum class SubproblemState : std::uint8_t { active, finished };

/// The pair of buckets of two adjacent representatives.
struct Subproblem {
    SubproblemState state = SubproblemState::active;
    std::uint64_t mark = 0;       // round of creation
    Price accumulated_cost;       // charged probe and canonicalization cost
    std::int32_t node = -1;       // refinement tree node
};

/*
 * Ordered list of representatives with adjacent colors always different.
 *
 * Representatives live in an arena with prev/next links so that inserting an
 * inversion does not invalidate handles. A handle names a representative, its
 * bucket, and the subproblem between it and its successor.
 */
class Backbone {
public:
    using Handle = std::int32_t;
    static constexpr Handle npos = -1;

    /// The trivial bichromatic backbone: red sentinel owning all reds, blue
    /// sentinel owning all blues, one active subproblem marked 0.
    static Backbone bichromatic(std::span<const KeyId> reds, std::span<const KeyId> blues) {
        Backbone b;
        Handle r = b.push_back(kRedSentinel, kRed);
        Handle s = b.push_back(kBlueSentinel, kBlue);
        b.bucket(r).members.assign(reds.begin(), reds.end());
        b.bucket(s).members.assign(blues.begin(), blues.end());
        return b;
    }

    /// Appends a representative at the right end. Only for construction.
    Handle push_back(KeyId rep, Color color) {
        if (tail_ != npos && slots_[static_cast<std::size_t>(tail_)].bucket.color == color)
            throw InvariantError("Backbone::push_back: adjacent representatives share a color");
        Slot s;
        s.bucket.rep = rep;
        s.bucket.color = color;
        s.bucket.reset_sample();
        s.prev = tail_;
        slots_.push_back(std::move(s));
        Handle h = static_cast<Handle>(slots_.size() - 1);
        if (tail_ != npos) slot(tail_).next = h;
        else head_ = h;
        tail_ = h;
        ++size_;
        return h;
    }

    Handle head() const { return head_; }
    Handle tail() const { return tail_; }
    Handle next(Handle h) const { return slot(h).next; }
    Handle prev(Handle h) const { return slot(h).prev; }
    std::size_t size() const { return size_; }

    Bucket& bucket(Handle h) { return slot(h).bucket; }
    const Bucket& bucket(Handle h) const { return slot(h).bucket; }
    KeyId rep(Handle h) const { return slot(h).bucket.rep; }
    Color color(Handle h) const { return slot(h).bucket.color; }

    /// Subproblem between h and next(h).
    Subproblem& subproblem(Handle h) { return slot(h).sub; }
    const Subproblem& subproblem(Handle h) const { return slot(h).sub; }
    bool has_subproblem(Handle h) const { return slot(h).next != npos; }

    std::vector<Handle> handles() const {
        std::vector<Handle> out;
        out.reserve(size_);
        for (Handle h = head_; h != npos; h = next(h)) out.push_back(h);
        return out;
    }
    std::vector<KeyId> representatives() const {
        std::vector<KeyId> out;
        out.reserve(size_);
        for (Handle h = head_; h != npos; h = next(h)) out.push_back(rep(h));
        return out;
    }
    std::vector<Handle> active_subproblems() const {
        std::vector<Handle> out;
        for (Handle h = head_; h != npos && next(h) != npos; h = next(h))
            if (subproblem(h).state == SubproblemState::active) out.push_back(h);
        return out;
    }

    struct Insertion {
        std::array<Handle, 3> subproblems;  // (u_i, y), (y, x), (x, u_{i+1})
        std::uint64_t comparisons = 0;      // pivoting comparisons charged
    };

    /*
     * Inserts the inversion y < x found in the subproblem at h, where x is a
     * member of bucket(h) and y a member of bucket(next(h)). The backbone
     * becomes (.., u_i, y, x, u_{i+1}, ..). Members of bucket(h) are placed by
     * one comparison against y, members of bucket(next(h)) by one comparison
     * against x. Both old buckets get a fresh sample. The three new
     * subproblems are active and marked with `round`.
     *
     * `touches`, when given, counts pivoting comparisons per key.
     */
    Insertion insert_inversion(Handle h, KeyId y, KeyId x, ComparisonOracle& oracle, std::uint64_t round,
                               std::vector<std::uint8_t>* touches = nullptr) {
        if (!has_subproblem(h)) throw InvariantError("insert_inversion: no subproblem at handle");
        Handle right = next(h);
        Bucket& lb = bucket(h);
        Bucket& rb = bucket(right);
        if (subproblem(h).state != SubproblemState::active)
            throw InvariantError("insert_inversion: subproblem is not active");
        if (oracle.color(x) != lb.color || oracle.color(y) != rb.color)
            throw InvariantError("insert_inversion: inversion endpoints have the wrong colors");

        PhaseScope scope(oracle, Phase::pivot);
        Insertion result;

        auto touch = [&](KeyId k) {
            if (touches && !is_sentinel(k)) ++(*touches)[static_cast<std::size_t>(k)];
        };

        // Split the left bucket by y: below stays with u_i, above goes to x.
        std::vector<KeyId> left_keep, x_members;
        bool found_x = false;
        for (KeyId k : lb.members) {
            if (k == x) {
                found_x = true;
                continue;
            }
            ++result.comparisons;
            touch(k);
            if (oracle.less(k, y)) left_keep.push_back(k);
            else x_members.push_back(k);
        }
        // Split the right bucket by x: above stays with u_{i+1}, below goes to y.
        std::vector<KeyId> right_keep, y_members;
        bool found_y = false;
        for (KeyId k : rb.members) {
            if (k == y) {
                found_y = true;
                continue;
            }
            ++result.comparisons;
            touch(k);
            if (oracle.less(x, k)) right_keep.push_back(k);
            else y_members.push_back(k);
        }
        if (!found_x || !found_y) throw InvariantError("insert_inversion: endpoint not in its bucket");

        lb.members = std::move(left_keep);
        lb.reset_sample();
        rb.members = std::move(right_keep);
        rb.reset_sample();

        Handle hy = insert_after(h, y, rb.color);
        Handle hx = insert_after(hy, x, bucket(h).color);
        bucket(hy).members = std::move(y_members);
        bucket(hx).members = std::move(x_members);

        for (Handle n : {h, hy, hx}) {
            Subproblem& s = subproblem(n);
            s = Subproblem{};
            s.mark = round;
        }
        result.subproblems = {h, hy, hx};
        return result;
    }

    /// Links a new representative (empty bucket) right after `at`. The caller
    /// keeps colors alternating and buckets consistent.
    Handle insert_after(Handle at, KeyId rep, Color color) {
        Slot s;
        s.bucket.rep = rep;
        s.bucket.color = color;
        s.bucket.reset_sample();
        s.prev = at;
        s.next = slot(at).next;
        slots_.push_back(std::move(s));
        Handle h = static_cast<Handle>(slots_.size() - 1);
        if (slot(h).next != npos) slot(slot(h).next).prev = h;
        else tail_ = h;
        slot(at).next = h;
        ++size_;
        return h;
    }

    /// One line per representative: `id color bucket_size state`.
    void write_snapshot(std::ostream& os) const {
        for (Handle h = head_; h != npos; h = next(h)) {
            const Bucket& b = bucket(h);
            os << b.rep << ' ' << static_cast<int>(b.color) << ' ' << b.members.size();
            if (next(h) != npos) os << ' ' << (subproblem(h).state == SubproblemState::active ? 'A' : 'F');
            os << '\n';
        }
    }

private:
    struct Slot {
        Bucket bucket;
        Subproblem sub;
        Handle prev = npos;
        Handle next = npos;
    };

    Slot& slot(Handle h) { return slots_.at(static_cast<std::size_t>(h)); }
    const Slot& slot(Handle h) const { return slots_.at(static_cast<std::size_t>(h)); }

    std::vector<Slot> slots_;
    Handle head_ = npos;
    Handle tail_ = npos;
    std::size_t size_ = 0;
};

}  // namespace priced_sort

#endif
