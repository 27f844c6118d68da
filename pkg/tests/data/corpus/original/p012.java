public class BoxTest {
  @Test(timeout = 4000)
  public void test0() throws Throwable {
    Box box0 = new Box();
    box0.put("k", (Object) "v");
    String string0 = (String) box0.get("k");
    String string1 = string0 == null ? "" : string0;
    assertEquals("v", string1);
  }
}
