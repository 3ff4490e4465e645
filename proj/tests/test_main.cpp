#include <catch_amalgamated.hpp>

#include <stabletensor/oracle.hpp>

// Every decomposition produced anywhere in the unit-test run is audited for
// exact dimension conservation; a violation throws and fails the test that
// triggered it.
namespace {

struct AuditSwitch : Catch::EventListenerBase {
  using EventListenerBase::EventListenerBase;
  void testRunStarting(const Catch::TestRunInfo&) override {
    stabletensor::set_dimension_audit(true);
  }
};

CATCH_REGISTER_LISTENER(AuditSwitch)

}  // namespace
