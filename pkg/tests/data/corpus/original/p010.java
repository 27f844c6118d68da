public class SorterTest {
  @Test(timeout = 4000)
  public void test7() throws Throwable {
    int[] intArray0 = new int[3];
    intArray0[0] = 3;
    intArray0[1] = 1;
    intArray0[2] = 2;
    Sorter.sort(intArray0);
    assertEquals(1, intArray0[0]);
  }
}
