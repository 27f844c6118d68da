public class EngineTest {
  @Test(timeout = 4000)
  public void test3() throws Throwable {
    Engine engine0 = new Engine();
    engine0.start();
    boolean boolean0 = engine0.isRunning();
    assertTrue(boolean0);
  }
}
