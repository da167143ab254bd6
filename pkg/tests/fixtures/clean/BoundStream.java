package app.io;

import android.content.Context;
import java.io.FileInputStream;
import java.io.IOException;

public class BoundStream {
    public void importData(Context ctx, String name) throws IOException {
        FileInputStream in = ctx.openFileInput(name);
        try {
            parse(in);
        } finally {
            in.close();
        }
    }

    private void parse(FileInputStream in) {
    }
}
