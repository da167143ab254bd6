package app.io;

import java.io.FileReader;
import java.io.IOException;

public class LackingReferenceBareNew {
    public void touch(String path) throws IOException {
        new FileReader(path);
        log("checked " + path);
    }

    private void log(String message) {
    }
}
