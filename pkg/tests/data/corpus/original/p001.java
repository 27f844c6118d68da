import org.junit.Test;
import static org.junit.Assert.assertEquals;

public class CalculatorTest {
  @Test(timeout = 4000)
  public void test0() throws Throwable {
    Calculator calculator0 = new Calculator();
    int int0 = calculator0.add(21, 21);
    assertEquals(42, int0);
  }
}
