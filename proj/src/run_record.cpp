#include "prsim/run_record.hpp"

namespace prsim {

std::string_view to_string(Setting s) {
  return s == Setting::CS ? "cs" : "as";
}

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::Created: return "created";
    case EventKind::Submitted: return "submitted";
    case EventKind::EnteredPool: return "entered_pool";
    case EventKind::ReviewAssigned: return "review_assigned";
    case EventKind::ReviewCompleted: return "review_completed";
    case EventKind::Revised: return "revised";
    case EventKind::Ripened: return "ripened";
    case EventKind::Accepted: return "accepted";
    case EventKind::Rejected: return "rejected";
    case EventKind::Bid: return "bid";
    case EventKind::Published: return "published";
    case EventKind::Abandoned: return "abandoned";
  }
  return "created";
}

}  // namespace prsim
