public class CounterTest {
  @Test(timeout = 4000)
  public void test3() throws Throwable {
    Counter counter0 = new Counter();
    counter0.increment();
    counter0.increment();
    counter0.increment();
    int int0 = counter0.value();
    assertEquals(3, int0);
  }
}
