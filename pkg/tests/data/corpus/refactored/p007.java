public class RangeTest {
  @Test(timeout = 4000)
  public void testMidpointIsContained() throws Throwable {
    Range range = new Range(0, 10);
    boolean containsMidpoint = range.contains(5);
    assertTrue(containsMidpoint);
  }
}
