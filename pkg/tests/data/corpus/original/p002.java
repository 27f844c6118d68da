public class StackTest {
  @Test(timeout = 4000)
  public void test0() throws Throwable {
    Stack stack0 = new Stack();
    stack0.push(7);
    int int0 = stack0.pop();
    assertEquals(7, int0);
  }
}
