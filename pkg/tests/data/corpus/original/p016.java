public class SessionTest {
  @Test(timeout = 4000)
  public void test2() throws Throwable {
    Session session0 = new Session();
    try {
      session0.begin();
      session0.commit();
    } finally {
      session0.close();
    }
    assertFalse(session0.isOpen());
  }
}
