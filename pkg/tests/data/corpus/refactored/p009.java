public class TokenizerTest {
  @Test(timeout = 4000)
  public void testCommaSeparatedInputYieldsThreeTokens() throws Throwable {
    Tokenizer tokenizer = new Tokenizer("a,b,c");
    int tokenCount = 0;
    while (tokenizer.hasNext()) {
      tokenizer.next();
      tokenCount = tokenCount + 1;
    }
    assertEquals(3, tokenCount);
  }
}
