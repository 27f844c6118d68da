public class ValidatorTest {
  @Test(timeout = 4000)
  public void testOnlyNonEmptyInputsAreAccepted() throws Throwable {
    Validator validator = new Validator();
    String[] inputs = new String[2];
    inputs[0] = "ok";
    inputs[1] = "";
    int acceptedCount = 0;
    for (String input : inputs) {
      if (validator.accepts(input)) {
        acceptedCount = acceptedCount + 1;
      }
    }
    assertEquals(1, acceptedCount);
  }
}
