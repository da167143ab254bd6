package app.io;

import java.io.FileInputStream;
import java.io.IOException;

public class LostReferenceStream {
    public void concat(String first, String second) throws IOException {
        FileInputStream in = new FileInputStream(first);
        in = new FileInputStream(second);
        drain(in);
        in.close();
    }

    private void drain(FileInputStream in) {
    }
}
