#include "wsnloc/energy.hpp"

#include <stdexcept>

namespace wsnloc {

EnergyLedger charge_node(double tx_time_s, double phase_duration_s, std::size_t lateration_executions,
                         std::size_t bbox_executions, const EnergyParams& params) {
    if (tx_time_s < 0.0 || tx_time_s > phase_duration_s) {
        throw std::invalid_argument("charge_node: tx time must lie within the phase duration");
    }
    EnergyLedger ledger;
    ledger.tx_time_s = tx_time_s;
    ledger.listen_time_s = phase_duration_s - tx_time_s;
    ledger.lateration_executions = lateration_executions;
    // mW * s = mJ
    ledger.total_mj = params.p_tx_mw * ledger.tx_time_s + params.p_rx_idle_mw * ledger.listen_time_s +
                      params.e_lateration_mj * static_cast<double>(lateration_executions) +
                      params.e_bbox_mj * static_cast<double>(bbox_executions);
    return ledger;
}

}  // namespace wsnloc
