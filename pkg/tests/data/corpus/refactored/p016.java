public class SessionTest {
  @Test(timeout = 4000)
  public void testSessionAlwaysClosesAfterCommit() throws Throwable {
    Session session = new Session();
    try {
      session.begin();
      session.commit();
    } finally {
      // The session must close even if commit throws.
      session.close();
    }
    assertFalse(session.isOpen());
  }
}
