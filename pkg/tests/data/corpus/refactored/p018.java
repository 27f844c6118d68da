public class EngineTest {
  @Test(timeout = 4000)
  public void verifyColdEngineRejectsThrottleCommands() throws Throwable {
    Throttle throttle = Throttle.idle();
    Report report = Diagnostics.inspect(throttle);
    assertNotNull(report.summary());
    assertEquals(Severity.WARNING, report.severity());
  }
}
