package app.io;

import java.io.BufferedReader;
import java.io.FileReader;
import java.io.IOException;

public class WrappedReader {
    public String firstLine(String path) throws IOException {
        BufferedReader reader = new BufferedReader(new FileReader(path));
        try {
            return reader.readLine();
        } finally {
            reader.close();
        }
    }
}
