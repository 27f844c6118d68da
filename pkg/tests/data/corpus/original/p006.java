public class MatrixTest {
  @Test(timeout = 4000)
  public void test4() throws Throwable {
    Matrix matrix0 = new Matrix(2, 2);
    matrix0.set(0, 0, 5);
    matrix0.set(1, 1, 5);
    Matrix matrix1 = matrix0.transpose();
    assertEquals(5, matrix1.get(0, 0));
  }
}
