@Test(timeout = 4000)
    public void testMainMethodThrowsNoClassDefFoundError() throws Throwable {
        // Given: A specific array of strings to simulate command line arguments
        String[] stringArray = TEST_STRING_ARRAY.clone();
        // When: The main method of MacawWorkBench is called
        // Then: Expect a NoClassDefFoundError due to missing class initialization
        try {
            MacawWorkBench.main(stringArray);
            fail("Expecting exception: NoClassDefFoundError");
        } catch (NoClassDefFoundError e) {
            // Verify the exception is related to class initialization
            // verifyException("macaw.businessLayer.User", e);
        }
    }
