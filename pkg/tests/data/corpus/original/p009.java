public class TokenizerTest {
  @Test(timeout = 4000)
  public void test6() throws Throwable {
    Tokenizer tokenizer0 = new Tokenizer("a,b,c");
    int int0 = 0;
    while (tokenizer0.hasNext()) {
      tokenizer0.next();
      int0 = int0 + 1;
    }
    assertEquals(3, int0);
  }
}
