#include "detail.hpp"
#include "judgebench/error.hpp"

namespace judgebench::protocols {

RunRecord run_dcp_sum(const DecisionVector& decisions, const std::vector<int>& secrets) {
  detail::check_judge_count(decisions, 3);
  const std::size_t judges = decisions.size();
  const std::size_t n = judges / 2;
  const int modulus = static_cast<int>(2 * n + 2);
  if (secrets.size() != judges) {
    throw ParameterError("need one secret per adjacent pair (" + std::to_string(judges) + "), got " +
                         std::to_string(secrets.size()));
  }
  for (std::size_t i = 0; i < judges; ++i) {
    if (secrets[i] < 0 || secrets[i] >= modulus) {
      throw ParameterError("secret s" + std::to_string(i) + " = " + std::to_string(secrets[i]) +
                           " outside Z_" + std::to_string(modulus));
    }
  }

  RunRecord rec;
  rec.protocol = ProtocolId::DcpSum;
  rec.n = n;
  rec.decisions = decisions;
  DcpState st;
  st.n = n;
  st.modulus = modulus;
  st.secrets = secrets;

  std::vector<std::vector<LabeledValue>> own(judges);
  for (std::size_t i = 0; i < judges; ++i) {
    const std::size_t prev = (i + judges - 1) % judges;
    own[i] = {{"s" + std::to_string(prev), secrets[prev]}, {"s" + std::to_string(i), secrets[i]}};
    rec.randomness.push_back({"s" + std::to_string(i), secrets[i]});
  }

  int sum = 0;
  for (std::size_t i = 0; i < judges; ++i) {
    const std::size_t prev = (i + judges - 1) % judges;
    const int a = ((secrets[i] - secrets[prev] + decisions[i]) % modulus + modulus) % modulus;
    st.announcements.push_back(a);
    sum = (sum + a) % modulus;
    detail::emit(rec.events, 1, static_cast<int>(i), kAllAgents, "announce", {a},
                 ChannelKind::Broadcast, {});
  }
  st.sum = sum;

  rec.outcome = sum;
  rec.verdict = core::verdict_from_bit(static_cast<std::size_t>(sum) >= n + 1 ? 1 : 0);
  rec.verdict_round = 1;
  rec.dcp = st;
  detail::assemble_views(rec, own);
  return rec;
}

}  // namespace judgebench::protocols
