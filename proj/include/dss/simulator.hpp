#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dss/capacity.hpp"
#include "dss/errors.hpp"
#include "dss/field.hpp"
#include "dss/rskr.hpp"

namespace dss {
namespace sim {

// One stored copy of a coded symbol: a width-w coordinate vector (w = 1 for
// base-field schemes, w = v for packet schemes), an optional hash row
// sidecar, and the ground-truth originator of any corruption it carries.
// The corruptor field is bookkeeping for the test harness; decoders never
// see it.
struct Copy {
    std::vector<Sym> value;
    std::vector<Sym> hash_row;
    int corruptor = -1;

    bool corrupted() const { return corruptor >= 0; }
};

struct RepairDownload {
    int helper = -1; // slot the data came from
    int index = -1;
    Copy received;
};

struct FailureEvent {
    int slot = -1;
    int replacement_vid = -1;
    int generation = -1;
    std::vector<int> helper_slots;
};

// What an eavesdropper saw on one compromised incarnation: the stored
// content, plus the full download transcript when the incarnation was
// created by a repair she watched.
struct EavesdropRecord {
    int slot = -1;
    int vid = -1;
    int generation = -1;
    std::vector<std::pair<int, Copy>> stored; // (index, copy)
    std::optional<std::vector<RepairDownload>> downloads;
};

struct CollectorItem {
    int index = -1;
    std::vector<Sym> value;
    std::vector<Sym> hash_row;
    int supplier = -1;  // slot the copy was read from
    int corruptor = -1; // ground truth, not consulted by decoders
};

struct CollectorView {
    std::vector<int> nodes;
    std::vector<std::vector<CollectorItem>> per_node;

    // Distinct-index projection in first-seen node order: the M symbols a
    // decoder works from, duplicates dropped.
    std::vector<CollectorItem> distinct() const {
        std::set<int> seen;
        std::vector<CollectorItem> out;
        for (const auto& items : per_node)
            for (const auto& it : items)
                if (seen.insert(it.index).second) out.push_back(it);
        std::sort(out.begin(), out.end(),
                  [](const CollectorItem& a, const CollectorItem& b) { return a.index < b.index; });
        return out;
    }
};

// Deterministic single-owner state of one storage system instance. Slots are
// the layout's time-invariant positions; incarnations are tracked by
// generation counters and v-numbers in the event log.
class SystemState {
public:
    static SystemState init(const DssParams& p, const ThreatModel& t,
                            const std::vector<std::vector<Sym>>& payload,
                            const std::vector<std::vector<Sym>>& hash_sidecar, // empty or theta rows
                            std::uint64_t seed, bool sidecar_secure = true) {
        p.validate();
        t.validate(p);
        require(p.d == p.n - 1, Err::NotSupported, "repair uses all survivors, d must be n-1");
        SystemState s;
        s.params_ = p;
        s.threat_ = t;
        s.layout_ = RskrLayout::build(p.n);
        s.seed_ = seed;
        require(static_cast<int>(payload.size()) == s.layout_.theta, Err::ShapeError,
                "payload must provide one value per coded symbol");
        if (!payload.empty()) s.width_ = payload[0].size();
        for (const auto& v : payload)
            require(v.size() == s.width_, Err::ShapeError, "payload values must share one width");
        if (!hash_sidecar.empty()) {
            require(static_cast<int>(hash_sidecar.size()) == s.layout_.theta, Err::ShapeError,
                    "hash sidecar needs one row per coded symbol");
            s.has_sidecar_ = true;
            s.sidecar_secure_ = sidecar_secure;
        }
        s.slots_.resize(p.n);
        for (int slot = 0; slot < p.n; ++slot) {
            for (int idx : s.layout_.node_symbols[slot]) {
                Copy c;
                c.value = payload[idx];
                if (s.has_sidecar_) c.hash_row = hash_sidecar[idx];
                s.slots_[slot].push_back(std::move(c));
            }
        }
        s.generation_.assign(p.n, 0);
        s.vid_.resize(p.n);
        for (int i = 0; i < p.n; ++i) s.vid_[i] = i;
        // an omniscient intruder reads everything by definition
        if (t.kind == ThreatKind::Omniscient)
            for (int i = 0; i < p.n; ++i) s.eavesdrop_.insert(i);
        return s;
    }

    const DssParams& params() const { return params_; }
    const ThreatModel& threat() const { return threat_; }
    const RskrLayout& layout() const { return layout_; }
    std::uint64_t seed() const { return seed_; }
    std::size_t width() const { return width_; }
    bool has_sidecar() const { return has_sidecar_; }
    int generation(int slot) const { return generation_.at(slot); }
    int vid(int slot) const { return vid_.at(slot); }
    const std::vector<FailureEvent>& event_log() const { return events_; }
    const std::set<int>& eavesdrop_set() const { return eavesdrop_; }
    const std::set<int>& control_set() const { return control_; }

    // --- adversary occupancy -------------------------------------------------

    void occupy_eavesdrop(int slot) {
        layout_.check_node(slot);
        if (threat_.kind == ThreatKind::Omniscient) return; // already sees all
        require(eavesdrop_.count(slot) ||
                    static_cast<int>(eavesdrop_.size()) < threat_.ell,
                Err::BudgetExceeded, "eavesdrop budget exhausted");
        eavesdrop_.insert(slot);
    }

    void occupy_control(int slot) {
        layout_.check_node(slot);
        require(control_.count(slot) || static_cast<int>(control_.size()) < threat_.b,
                Err::BudgetExceeded, "control budget exhausted");
        if (threat_.kind == ThreatKind::Limited)
            require(eavesdrop_.count(slot), Err::ModelViolation,
                    "a limited-knowledge intruder controls only eavesdropped nodes");
        require(threat_.kind != ThreatKind::Passive, Err::ModelViolation,
                "a passive eavesdropper controls nothing");
        control_.insert(slot);
    }

    // --- adversary actions ----------------------------------------------------

    void corrupt_stored(int slot, int index, std::vector<Sym> value) {
        require(control_.count(slot), Err::ModelViolation, "node is not controlled");
        require(value.size() == width_, Err::ShapeError, "corruption width mismatch");
        auto& c = mutable_copy_at(slot, index);
        c.value = std::move(value);
        c.corruptor = slot;
    }

    // What the slot will send when asked for the given index during repair,
    // regardless of what it stores.
    void set_repair_lie(int slot, int index, std::vector<Sym> value) {
        require(control_.count(slot), Err::ModelViolation, "node is not controlled");
        require(value.size() == width_, Err::ShapeError, "lie width mismatch");
        copy_at(slot, index); // validates the slot stores this index
        lies_[{slot, index}] = std::move(value);
    }

    // Overwrite everything on the slot with a fixed value irrespective of
    // the stored file, and keep sending it.
    void erase_slot(int slot, Sym fill) {
        require(control_.count(slot), Err::ModelViolation, "node is not controlled");
        const auto& indices = layout_.node_symbols[slot];
        for (std::size_t t = 0; t < indices.size(); ++t) {
            std::vector<Sym> v(width_, fill);
            corrupt_stored(slot, indices[t], v);
            set_repair_lie(slot, indices[t], std::move(v));
        }
    }

    // --- failure / repair ----------------------------------------------------

    void fail_and_repair(int slot) {
        layout_.check_node(slot);
        auto plan = layout_.repair_plan(slot);
        std::vector<RepairDownload> downloads;
        downloads.reserve(plan.size());
        for (auto [helper, index] : plan) {
            RepairDownload d;
            d.helper = helper;
            d.index = index;
            auto lie = lies_.find({helper, index});
            if (lie != lies_.end()) {
                d.received.value = lie->second;
                d.received.corruptor = helper;
                d.received.hash_row = copy_at(helper, index).hash_row;
            } else {
                d.received = copy_at(helper, index);
            }
            downloads.push_back(std::move(d));
        }
        // the incarnation stores exactly what it received, verbatim
        const auto& indices = layout_.node_symbols[slot];
        std::vector<Copy> fresh(indices.size());
        for (const auto& d : downloads) {
            auto pos = std::lower_bound(indices.begin(), indices.end(), d.index);
            fresh[static_cast<std::size_t>(pos - indices.begin())] = d.received;
        }
        slots_[slot] = std::move(fresh);
        generation_[slot] += 1;
        int new_vid = params_.n + total_failures_;
        total_failures_ += 1;
        vid_[slot] = new_vid;
        clear_lies_for_slot(slot);

        FailureEvent ev;
        ev.slot = slot;
        ev.replacement_vid = new_vid;
        ev.generation = generation_[slot];
        for (auto [helper, index] : plan) ev.helper_slots.push_back(helper);
        events_.push_back(ev);

        if (eavesdrop_.count(slot)) {
            EavesdropRecord rec;
            rec.slot = slot;
            rec.vid = new_vid;
            rec.generation = generation_[slot];
            rec.downloads = downloads;
            for (std::size_t t = 0; t < indices.size(); ++t)
                rec.stored.push_back({indices[t], slots_[slot][t]});
            taps_.push_back(std::move(rec));
        }
    }

    // --- observation ----------------------------------------------------------

    CollectorView collect(const std::vector<int>& nodes) const {
        require(static_cast<int>(nodes.size()) == params_.k, Err::BadCollector,
                "a collector contacts exactly k nodes");
        std::set<int> uniq(nodes.begin(), nodes.end());
        require(static_cast<int>(uniq.size()) == params_.k, Err::BadCollector,
                "collector nodes must be distinct");
        for (int v : nodes)
            require(v >= 0 && v < params_.n, Err::BadCollector, "collector node out of range");
        CollectorView view;
        view.nodes = nodes;
        for (int v : nodes) {
            std::vector<CollectorItem> items;
            const auto& indices = layout_.node_symbols[v];
            for (std::size_t t = 0; t < indices.size(); ++t) {
                CollectorItem it;
                it.index = indices[t];
                it.value = slots_[v][t].value;
                it.hash_row = slots_[v][t].hash_row;
                it.supplier = v;
                it.corruptor = slots_[v][t].corruptor;
                items.push_back(std::move(it));
            }
            view.per_node.push_back(std::move(items));
        }
        return view;
    }

    // Everything recorded on the eavesdropped slots: current stored content,
    // plus download transcripts captured at repair time. A secure sidecar is
    // invisible to the intruder, so its rows are stripped here.
    std::vector<EavesdropRecord> eavesdrop_view() const {
        std::vector<EavesdropRecord> out;
        for (int slot : eavesdrop_) {
            EavesdropRecord rec;
            rec.slot = slot;
            rec.vid = vid_[slot];
            rec.generation = generation_[slot];
            const auto& indices = layout_.node_symbols[slot];
            for (std::size_t t = 0; t < indices.size(); ++t)
                rec.stored.push_back({indices[t], slots_[slot][t]});
            out.push_back(std::move(rec));
        }
        for (const auto& tap : taps_) out.push_back(tap);
        if (has_sidecar_ && sidecar_secure_) {
            for (auto& rec : out) {
                for (auto& [idx, copy] : rec.stored) copy.hash_row.clear();
                if (rec.downloads)
                    for (auto& d : *rec.downloads) d.received.hash_row.clear();
            }
        }
        return out;
    }

    const Copy& copy_at(int slot, int index) const {
        layout_.check_node(slot);
        const auto& indices = layout_.node_symbols[slot];
        auto pos = std::lower_bound(indices.begin(), indices.end(), index);
        require(pos != indices.end() && *pos == index, Err::BadParams,
                "slot does not store index " + std::to_string(index));
        return slots_[slot][static_cast<std::size_t>(pos - indices.begin())];
    }

    // Ground truth for expurgation tests.
    int corruptor_of(int slot, int index) const { return copy_at(slot, index).corruptor; }

private:
    Copy& mutable_copy_at(int slot, int index) {
        return const_cast<Copy&>(static_cast<const SystemState*>(this)->copy_at(slot, index));
    }

    void clear_lies_for_slot(int slot) {
        // a fresh incarnation starts honest; if the slot is controlled the
        // adversary re-applies its policy explicitly
        for (auto it = lies_.begin(); it != lies_.end();)
            it = it->first.first == slot ? lies_.erase(it) : std::next(it);
    }

    DssParams params_;
    ThreatModel threat_;
    RskrLayout layout_;
    std::uint64_t seed_ = 0;
    std::size_t width_ = 1;
    bool has_sidecar_ = false;
    bool sidecar_secure_ = true;
    std::vector<std::vector<Copy>> slots_; // slot -> copies aligned with layout order
    std::vector<int> generation_;
    std::vector<int> vid_;
    int total_failures_ = 0;
    std::set<int> eavesdrop_;
    std::set<int> control_;
    std::map<std::pair<int, int>, std::vector<Sym>> lies_;
    std::vector<FailureEvent> events_;
    std::vector<EavesdropRecord> taps_;
};

} // namespace sim
} // namespace dss
